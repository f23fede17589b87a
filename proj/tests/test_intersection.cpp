#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qcc/bits.hpp"
#include "qcc/errors.hpp"
#include "qcc/intersection.hpp"
#include "qcc/zoo.hpp"

using namespace qcc;

namespace {

Bits from_int(std::uint64_t v, unsigned n) {
    Bits b(n);
    for (unsigned i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>(bit_at(v, i, n));
    return b;
}

Bits unit(unsigned n, unsigned i) {
    Bits b(n, 0);
    b[i] = 1;
    return b;
}

struct Tally {
    int found = 0;
    int wrong = 0;
    std::uint64_t max_cost = 0;
};

template <class Run>
Tally run_trials(const Bits& x, const Bits& y, std::uint64_t master, int trials, Run run) {
    Tally t;
    for (int k = 0; k < trials; ++k) {
        const auto o = run(x, y, default_qsearch_config(x.size(), split_seed(master, k)));
        if (o.index) {
            ++t.found;
            if (*o.index >= x.size() || !(x[*o.index] && y[*o.index])) ++t.wrong;
        }
        t.max_cost = std::max(t.max_cost, o.cost);
    }
    return t;
}

auto base = [](const Bits& x, const Bits& y, const QSearchConfig& c) { return base_intersection(x, y, c); };

}  // namespace

TEST(BaseSearch, SingleCommonIndex) {
    const Bits x = bits_from_string("0010");
    const auto t = run_trials(x, x, 1, 200, base);
    EXPECT_EQ(t.wrong, 0);
    EXPECT_GE(t.found, 100);
    const auto o = base_intersection(x, x, default_qsearch_config(4, 5));
    if (o.index) {
        EXPECT_EQ(*o.index, 2u);
    }
}

TEST(BaseSearch, DisjointInputsNeverClaimASolution) {
    const auto t = run_trials(bits_from_string("1100"), bits_from_string("0011"), 2, 200, base);
    EXPECT_EQ(t.found, 0);
}

TEST(BaseSearch, OneBitCostsTwo) {
    for (std::uint64_t v = 0; v < 4; ++v) {
        const auto o = base_intersection(from_int(v >> 1, 1), from_int(v & 1, 1), QSearchConfig{});
        EXPECT_EQ(o.cost, 2u);
        EXPECT_EQ(o.index.has_value(), v == 3);
    }
}

TEST(BaseSearch, CostIsOracleCallsPlusVerifications) {
    const Bits x = bits_from_string("00000001"), y = x;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto o = base_intersection(x, y, default_qsearch_config(8, s));
        EXPECT_EQ(o.cost, o.search.iterations * 8 + o.search.rounds * 8);
        EXPECT_LE(o.cost, base_worst_case_cost(8, default_qsearch_config(8, s)));
    }
}

TEST(BaseSearch, PaddingNeverCreatesSolutions) {
    for (unsigned n : {3u, 5u, 6u, 7u}) {
        const Bits ones(n, 1);
        const auto t = run_trials(ones, ones, n, 50, base);
        EXPECT_EQ(t.wrong, 0);
        EXPECT_GT(t.found, 25);
        EXPECT_EQ(run_trials(Bits(n, 0), ones, n, 20, base).found, 0);
    }
    EXPECT_THROW(base_intersection(Bits(3, 1), Bits(4, 1), QSearchConfig{}), ArgumentError);
    EXPECT_THROW(base_intersection(Bits{}, Bits{}, QSearchConfig{}), ArgumentError);
}

TEST(BaseSearch, EightBitsAllPairsTwoHundredTrials) {
    int worst = 200;
    int wrong = 0;
    for (std::uint64_t a = 0; a < 256; ++a)
        for (std::uint64_t b = 0; b < 256; ++b) {
            const Bits x = from_int(a, 8), y = from_int(b, 8);
            const auto t = run_trials(x, y, a * 256 + b, 200, base);
            wrong += t.wrong;
            if (a & b) {
                worst = std::min(worst, t.found);
            } else {
                EXPECT_EQ(t.found, 0);
            }
        }
    EXPECT_EQ(wrong, 0);
    EXPECT_GE(worst, 100);
}

TEST(Recursive, SingleBlockDelegatesWithIdenticalOutcomes) {
    RecursionConfig rc;
    rc.base_threshold = 2;
    rc.block_size_rule = [](double) { return 16.0; };
    std::mt19937_64 rng(4);
    for (int k = 0; k < 30; ++k) {
        Bits x(16), y(16);
        for (int i = 0; i < 16; ++i) {
            x[i] = static_cast<std::uint8_t>(rng() % 3 == 0);
            y[i] = static_cast<std::uint8_t>(rng() % 3 == 0);
        }
        const auto cfg = default_qsearch_config(16, split_seed(17, k));
        const auto r = recursive_intersection(x, y, rc, cfg);
        const auto b = base_intersection(x, y, cfg);
        EXPECT_TRUE(r.delegated);
        EXPECT_EQ(r.index, b.index);
        EXPECT_EQ(r.cost, b.cost);
    }
}

TEST(Recursive, SixtyFourBitsWithBlocksOfThirtySix) {
    RecursionConfig rc;
    rc.base_threshold = 36;  // the 36-index blocks run the base search
    ASSERT_EQ(rc.block_size(64), 36.0);
    const Bits x = unit(64, 42);
    int found = 0;
    for (int k = 0; k < 200; ++k) {
        const auto o = recursive_intersection(x, x, rc, default_qsearch_config(64, split_seed(42, k)));
        EXPECT_FALSE(o.delegated);
        if (o.index) {
            EXPECT_EQ(*o.index, 42u);
            ++found;
        }
        // blocks of 36 and 28 indices; 6 Grover rounds per block, oracle cost 14 on 36 indices
        const std::uint64_t c_A = 2 * 1 + 5 * 14;
        ASSERT_EQ(block_superposition_cost(64, rc), c_A);
        EXPECT_EQ(o.cost, o.search.applications * c_A + o.search.iterations * 14 + o.search.rounds * 14);
    }
    EXPECT_GE(found, 100);
}

TEST(Recursive, TwoLevelsStaySound) {
    // 64 -> blocks of 36 -> blocks of 27, each level amplified coherently
    RecursionConfig rc;
    rc.base_threshold = 30;
    std::mt19937_64 rng(12);
    for (int k = 0; k < 6; ++k) {
        Bits x(64, 0), y(64, 0);
        const unsigned i = static_cast<unsigned>(rng() % 64);
        x[i] = y[i] = 1;
        for (int j = 0; j < 64; ++j) {
            x[j] = x[j] || rng() % 5 == 0;
            if (j != static_cast<int>(i) && x[j]) y[j] = 0;
        }
        int found = 0;
        for (int t = 0; t < 40; ++t) {
            const auto o = recursive_intersection(x, y, rc, default_qsearch_config(64, split_seed(k, t)));
            if (o.index) {
                EXPECT_EQ(*o.index, i);
                ++found;
            }
        }
        EXPECT_GE(found, 20);
    }
}

TEST(Recursive, FourBitsExhaustivelyOneSided) {
    RecursionConfig rc;
    for (std::uint64_t a = 0; a < 16; ++a)
        for (std::uint64_t b = 0; b < 16; ++b) {
            const auto t = run_trials(from_int(a, 4), from_int(b, 4), a * 16 + b, 50,
                                      [&](const Bits& x, const Bits& y, const QSearchConfig& c) {
                                          return recursive_intersection(x, y, rc, c);
                                      });
            EXPECT_EQ(t.wrong, 0);
            if (!(a & b)) {
                EXPECT_EQ(t.found, 0);
            }
        }
}

TEST(Recursive, OneBitCostsTwo) {
    const auto o = recursive_intersection(Bits{1}, Bits{1}, RecursionConfig{}, QSearchConfig{});
    EXPECT_EQ(o.cost, 2u);
    ASSERT_TRUE(o.index.has_value());
    RecursionConfig bad;
    bad.base_threshold = 1;
    EXPECT_THROW(recursive_intersection(Bits{1}, Bits{1}, bad, QSearchConfig{}), ArgumentError);
}

TEST(CostModel, BaseCases) {
    const RecursionConfig rc;
    EXPECT_EQ(cost_model(1, rc, 3.0, 5.0), 2.0);
    // single block at 16: K sqrt(16)/log 16 * (C_16 + K' * 4), C_16 = K*4*2*(4+1) + 2*4 + 2
    const double K = 1.5, Kp = 2.0;
    const double base = K * 4.0 * 2.0 * 5.0 + 10.0;
    EXPECT_DOUBLE_EQ(cost_model(16, rc, K, Kp), K * 4.0 / 4.0 * (base + Kp * 4.0));
    EXPECT_THROW(cost_model(0.5, rc, 1, 1), ArgumentError);
}

TEST(CostModel, MonotoneInN) {
    const RecursionConfig rc;
    for (auto [K, Kp] : {std::pair{1.0, 1.0}, std::pair{1.0, 67.5}, std::pair{2.0, 3.0}}) {
        double prev = 0.0;
        for (double n = 1; n <= 20000; n += 1) {
            const double c = cost_model(n, rc, K, Kp);
            ASSERT_GE(c, prev) << "n = " << n;
            prev = c;
        }
        for (int e = 15; e <= 64; ++e) {
            const double c = cost_model(std::ldexp(1.0, e), rc, K, Kp);
            EXPECT_GE(c, prev);
            prev = c;
        }
    }
}

TEST(CostModel, LogStar) {
    EXPECT_EQ(log_star(1), 0u);
    EXPECT_EQ(log_star(2), 1u);
    EXPECT_EQ(log_star(4), 2u);
    EXPECT_EQ(log_star(16), 3u);
    EXPECT_EQ(log_star(17), 4u);
    EXPECT_EQ(log_star(65536), 4u);
    EXPECT_EQ(log_star(std::ldexp(1.0, 64)), 5u);
}

TEST(CostModel, UnitConstantsFitLogStarShape) {
    const auto fit = fit_log_star(RecursionConfig{}, 1.0, 1.0);
    EXPECT_TRUE(fit.ratios_nondecreasing);
    EXPECT_TRUE(fit.bounded);
    EXPECT_LE(fit.c, 16.0);
    for (std::size_t i = 0; i < fit.probes.size(); ++i)
        EXPECT_LE(fit.ratios[i], fit.kappa * std::pow(fit.c, log_star(fit.probes[i])) * (1 + 1e-12));
}

TEST(CostModel, FittedConstantsCoverWorstCaseBaseCosts) {
    const RecursionConfig rc;
    const auto k = fitted_cost_constants(rc);
    EXPECT_EQ(k.K, 1.0);
    for (std::uint64_t n : {1u, 4u, 16u, 64u})
        EXPECT_GE(cost_model(static_cast<double>(n), rc, k.K, k.K_prime) * (1 + 1e-9),
                  static_cast<double>(base_worst_case_cost(n, default_qsearch_config(n, 0))));
    // smallest such K': 1% less fails somewhere
    bool fails = false;
    for (std::uint64_t n : {4u, 16u, 64u})
        fails = fails || cost_model(static_cast<double>(n), rc, k.K, 0.99 * k.K_prime) <
                             static_cast<double>(base_worst_case_cost(n, default_qsearch_config(n, 0)));
    EXPECT_TRUE(fails);
}

TEST(CostModel, WorstCaseCoversInstrumentedRuns) {
    RecursionConfig deep;
    deep.base_threshold = 30;  // two levels at 64
    RecursionConfig one;
    one.base_threshold = 36;
    for (const auto& rc : {RecursionConfig{}, one, deep})
        for (std::uint64_t n : {1u, 5u, 16u, 64u}) {
            const auto bound = recursive_worst_case_cost(n, rc, default_qsearch_config(n, 0));
            if (n <= rc.base_threshold) {
                EXPECT_EQ(bound, base_worst_case_cost(n, default_qsearch_config(n, 0)));
            }
            for (int t = 0; t < 40; ++t) {
                const auto cfg = default_qsearch_config(n, split_seed(n, t));
                EXPECT_LE(recursive_intersection(Bits(n, 0), Bits(n, 1), rc, cfg).cost, bound);
                EXPECT_LE(recursive_intersection(unit(n, n - 1), unit(n, n - 1), rc, cfg).cost, bound);
            }
        }
    // a budget-exhausting run on disjoint inputs gets close to the bound
    const auto o = recursive_intersection(Bits(64, 0), Bits(64, 0), one, default_qsearch_config(64, 1));
    EXPECT_GE(static_cast<double>(o.cost), 0.8 * recursive_worst_case_cost(64, one, default_qsearch_config(64, 1)));
}

TEST(CostModel, FittedConstantsPerConfiguration) {
    RecursionConfig one;
    one.base_threshold = 36;
    const auto k = fitted_cost_constants(one);
    EXPECT_GT(k.K_prime, fitted_cost_constants(RecursionConfig{}).K_prime);
    EXPECT_GE(cost_model(64, one, k.K, k.K_prime) * (1 + 1e-9),
              static_cast<double>(recursive_worst_case_cost(64, one, default_qsearch_config(64, 0))));
}

TEST(Verification, Cost) {
    EXPECT_EQ(verification_cost(1), 2u);
    EXPECT_EQ(verification_cost(4), 6u);
    EXPECT_EQ(verification_cost(5), 8u);
    EXPECT_EQ(verification_cost(64), 14u);
}
