#include "qcc/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "qcc/bits.hpp"
#include "qcc/errors.hpp"
#include "qcc/gates.hpp"
#include "qcc/ndet.hpp"

namespace qcc {
namespace {

std::vector<Wire> range(Region r, unsigned start, unsigned count) {
    std::vector<Wire> w;
    for (unsigned i = 0; i < count; ++i) w.push_back({r, start + i});
    return w;
}

std::vector<Wire> concat(std::vector<Wire> a, const std::vector<Wire>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// x_i for an n-bit input, 0 on padded indices
unsigned input_bit(std::uint64_t x, std::uint64_t i, unsigned n) {
    return i < n ? bit_at(x, static_cast<unsigned>(i), n) : 0u;
}

// dest ^= (x_i [and extra]) where wires = index..., [extra], dest
Gate xor_input_bit(const std::vector<Wire>& index, std::optional<Wire> extra, Wire dest, std::uint64_t x,
                   unsigned n) {
    const unsigned k = static_cast<unsigned>(index.size());
    const unsigned e = extra ? 1u : 0u;
    auto f = [=](std::uint64_t v) -> std::uint64_t {
        const std::uint64_t idx = v >> (1 + e);
        const unsigned guard = e ? static_cast<unsigned>((v >> 1) & 1u) : 1u;
        return v ^ (input_bit(x, idx, n) & guard);
    };
    std::vector<Wire> wires = index;
    if (extra) wires.push_back(*extra);
    wires.push_back(dest);
    return {gates::permutation(k + e + 1, f), wires};
}

void add_swaps(Circuit& c, const std::vector<Wire>& a, const std::vector<Wire>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) c.push_back({gates::swap(), {a[i], b[i]}});
}

void add_hadamards(Circuit& c, const std::vector<Wire>& ws) {
    for (const auto& w : ws) c.push_back({gates::h(), {w}});
}

std::vector<Receive> receive_range(unsigned channel_start, unsigned party_start, unsigned count) {
    std::vector<Receive> r;
    for (unsigned i = 0; i < count; ++i) r.push_back({channel_start + i, party_start + i});
    return r;
}

}  // namespace

Protocol trivial_exact_protocol(const CommMatrix& f) {
    const unsigned n = f.n();
    RegisterLayout layout{0, n, n};
    ProtocolStep send{Party::Alice, 0, n, {}, {}, "send x"};
    send.build = [n](std::uint64_t x) {
        Circuit c;
        for (unsigned j = 0; j < n; ++j)
            if (bit_at(x, j, n)) c.push_back({gates::x(), {channel(j)}});
        return c;
    };
    ProtocolStep reply{Party::Bob, 0, 1, receive_range(0, 0, n), {}, "reply f(x,y)"};
    reply.build = [f, n](std::uint64_t y) {
        const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
        auto perm = [&](std::uint64_t v) -> std::uint64_t {
            const std::uint64_t xv = v & mask;
            return v ^ (f.at(xv, y) ? (std::uint64_t{1} << n) : 0u);
        };
        return Circuit{{gates::permutation(n + 1, perm), concat({channel(0)}, range(Region::Bob, 0, n))}};
    };
    return Protocol("trivial-exact-" + to_string(f.name()), layout, n, {send, reply});
}

Protocol always_accept_protocol(unsigned n) {
    ProtocolStep s{Party::Alice, 0, 1, {}, {}, "accept"};
    s.build = [](std::uint64_t) { return Circuit{{gates::x(), {channel(0)}}}; };
    return Protocol("always-accept", RegisterLayout{0, 1, 0}, n, {s});
}

NdetProtocolBundle ndet_svd_protocol(const CMatrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) throw ArgumentError("witness matrix must be square");
    const unsigned n = ceil_log2(m.rows());
    if ((std::size_t{1} << n) != m.rows() || n < 1) throw ArgumentError("witness matrix must be 2^n x 2^n");
    const std::size_t size = m.rows();
    const double max = m.max_abs();

    NdetProtocolBundle out{Protocol("ndet-svd", RegisterLayout{0, 1, 0}, n, {}), m, 0,
                           std::vector<double>(size, 0.0), size, 0};
    if (max == 0.0) return out;

    // M^T = U Sigma V
    const SvdResult f = svd(m.transpose());
    const std::size_t r = static_cast<std::size_t>(
        std::count_if(f.sigma.begin(), f.sigma.end(), [&](double s) { return s > tol * f.sigma.front(); }));

    std::vector<bool> live(size, false);
    out.dead_rows = 0;
    for (std::size_t x = 0; x < size; ++x) {
        for (std::size_t y = 0; y < size; ++y) live[x] = live[x] || std::abs(m(x, y)) > tol * max;
        if (!live[x]) ++out.dead_rows;
    }

    const unsigned k = ceil_log2(r);
    unsigned kmsg = k;
    std::size_t dead_index = 0;
    if (out.dead_rows > 0) {
        if (r < (std::size_t{1} << k)) {
            dead_index = r;
        } else {
            kmsg = k + 1;
            dead_index = std::size_t{1} << k;
        }
    }
    const std::size_t D = std::size_t{1} << kmsg;

    // |phi_x> = c_x Sigma V |x>, truncated to its first r amplitudes
    std::vector<CVector> phi(size, CVector(D));
    for (std::size_t x = 0; x < size; ++x) {
        if (!live[x]) {
            phi[x][dead_index] = 1.0;
            continue;
        }
        double nrm = 0.0;
        for (std::size_t j = 0; j < r; ++j) {
            phi[x][j] = f.sigma[j] * f.v(j, x);
            nrm += std::norm(phi[x][j]);
        }
        nrm = std::sqrt(nrm);
        out.per_row_norm[x] = 1.0 / nrm;
        for (std::size_t j = 0; j < r; ++j) phi[x][j] /= nrm;
    }

    // Bob's readout row for y: first r entries of row y of U
    std::vector<CVector> readout(size, CVector(2 * D));
    for (std::size_t y = 0; y < size; ++y) {
        double t2 = 0.0;
        for (std::size_t j = 0; j < r; ++j) {
            readout[y][j] = std::conj(f.u(y, j));
            t2 += std::norm(f.u(y, j));
        }
        readout[y][D] = std::sqrt(std::max(0.0, 1.0 - t2));
        const double nrm = readout[y].norm();
        for (std::size_t j = 0; j < 2 * D; ++j) readout[y][j] /= nrm;
    }

    RegisterLayout layout{0, 1 + kmsg, 1 + kmsg};
    ProtocolStep send{Party::Alice, 1, kmsg, {}, {}, "send compressed phi_x"};
    send.build = [phi, kmsg](std::uint64_t x) {
        Circuit c;
        if (kmsg > 0) c.push_back({complete_unitary(phi[x]), range(Region::Channel, 1, kmsg)});
        return c;
    };
    ProtocolStep reply{Party::Bob, 0, 1, receive_range(1, 1, kmsg), {}, "flag outcome y"};
    reply.build = [readout, kmsg](std::uint64_t y) {
        // Q has first row = (U_{y,0..r-1}, 0.., s, 0..): its |0> amplitude is <y|U|phi>
        const CMatrix q = complete_unitary(readout[y]).adjoint();
        const std::uint64_t zmask = (std::uint64_t{1} << (kmsg + 1)) - 1;
        auto flip_if_zero = [=](std::uint64_t v) -> std::uint64_t {
            return (v & zmask) == 0 ? v ^ (zmask + 1) : v;
        };
        const auto bob_wires = range(Region::Bob, 0, kmsg + 1);
        return Circuit{{q, bob_wires},
                       {gates::permutation(kmsg + 2, flip_if_zero), concat({channel(0)}, bob_wires)}};
    };
    out.protocol = Protocol("ndet-svd", layout, n, {send, reply});
    out.rank = r;
    out.message_qubits = kmsg;
    return out;
}

unsigned and_oracle_index_qubits(std::uint64_t block_size) { return ceil_log2(block_size); }

unsigned and_oracle_cost(std::uint64_t block_size) { return 2 * (and_oracle_index_qubits(block_size) + 1); }

Protocol distributed_and_oracle(std::uint64_t block_size, std::uint64_t index, unsigned target) {
    if (block_size < 1 || block_size > 32) throw CapacityError("fragment simulation supports blocks of 1..32 indices");
    const unsigned B = static_cast<unsigned>(block_size);
    const unsigned m = and_oracle_index_qubits(B);
    if (index >= (std::uint64_t{1} << m) && !(m == 0 && index == 0)) throw ArgumentError("index out of range");
    const auto idx = range(Region::Alice, 0, m);
    const Wire b = alice(m), scratch = alice(m + 1);

    ProtocolStep ask{Party::Alice, 0, m + 1, {}, {}, "send i and x_i AND b"};
    ask.build = [=](std::uint64_t x) {
        Circuit c;
        for (unsigned j = 0; j < m; ++j)
            if ((index >> (m - 1 - j)) & 1u) c.push_back({gates::x(), {idx[j]}});
        if (target) c.push_back({gates::x(), {b}});
        c.push_back({gates::h(), {b}});
        c.push_back(xor_input_bit(idx, b, channel(m), x, B));
        add_swaps(c, idx, range(Region::Channel, 0, m));
        return c;
    };
    ProtocolStep answer{Party::Bob, 0, m + 1, receive_range(0, 0, m + 1), {}, "phase by y_i, return"};
    answer.build = [=](std::uint64_t y) {
        auto phase = [=](std::uint64_t v) { return (v & 1u) && input_bit(y, v >> 1, B); };
        Circuit c{{gates::phase_flip(m + 1, phase), range(Region::Bob, 0, m + 1)}};
        add_swaps(c, range(Region::Bob, 0, m + 1), range(Region::Channel, 0, m + 1));
        return c;
    };
    auto back = receive_range(0, 0, m);
    back.push_back({m, m + 1});
    ProtocolStep finish{Party::Alice, 0, 0, back, {}, "uncompute scratch"};
    finish.build = [=](std::uint64_t x) {
        Circuit c;
        c.push_back(xor_input_bit(idx, b, scratch, x, B));
        c.push_back({gates::h(), {b}});
        return c;
    };
    return Protocol("and-oracle", RegisterLayout{m + 2, m + 1, m + 1}, B, {ask, answer, finish});
}

Protocol grover_sampling_protocol(unsigned n, unsigned search_qubits, SearchOutput output) {
    const unsigned m1 = search_qubits, m2 = ceil_log2(n);
    if (n < 1 || (std::uint64_t{1} << m1) < n) throw ArgumentError("search register too small for the input");
    const unsigned L = m1 + m2 + 2;
    const auto i1 = range(Region::Alice, 0, m1);
    const Wire flag = alice(m1);
    const auto i2 = range(Region::Alice, m1 + 1, m2);

    ProtocolStep query{Party::Alice, 0, m1 + 1, {}, {}, "superpose, query x_i"};
    query.build = [=](std::uint64_t x) {
        Circuit c;
        add_hadamards(c, i1);
        add_hadamards(c, i2);
        c.push_back(xor_input_bit(i1, std::nullopt, channel(m1), x, n));
        add_swaps(c, i1, range(Region::Channel, 0, m1));
        return c;
    };
    ProtocolStep answer{Party::Bob, 0, m1 + 1, receive_range(0, 0, m1 + 1), {}, "phase by y_i, return"};
    answer.build = [=](std::uint64_t y) {
        auto phase = [=](std::uint64_t v) { return (v & 1u) && input_bit(y, v >> 1, n); };
        Circuit c{{gates::phase_flip(m1 + 1, phase), range(Region::Bob, 0, m1 + 1)}};
        add_swaps(c, range(Region::Bob, 0, m1 + 1), range(Region::Channel, 0, m1 + 1));
        return c;
    };
    auto back = receive_range(0, 0, m1);
    back.push_back({m1, m1});
    ProtocolStep report{Party::Alice, 0, L, back, {}, "diffuse, send both candidates"};
    report.build = [=](std::uint64_t x) {
        Circuit c;
        c.push_back(xor_input_bit(i1, std::nullopt, flag, x, n));
        if (m1 > 0) c.push_back({gates::diffusion(m1), i1});
        c.push_back(xor_input_bit(i1, std::nullopt, channel(m1), x, n));
        add_swaps(c, i1, range(Region::Channel, 0, m1));
        c.push_back(xor_input_bit(i2, std::nullopt, channel(L - 1), x, n));
        add_swaps(c, i2, range(Region::Channel, m1 + 1, m2));
        return c;
    };
    ProtocolStep decide{Party::Bob, 0, 1, receive_range(0, 0, L), {}, "check both candidates"};
    decide.build = [=](std::uint64_t y) {
        auto perm = [=](std::uint64_t v) -> std::uint64_t {
            // v = out | i1 | x_i1 | i2 | x_i2, out most significant
            const std::uint64_t xi2 = v & 1u;
            const std::uint64_t j2 = (v >> 1) & ((std::uint64_t{1} << m2) - 1);
            const std::uint64_t xi1 = (v >> (m2 + 1)) & 1u;
            const std::uint64_t j1 = (v >> (m2 + 2)) & ((std::uint64_t{1} << m1) - 1);
            const bool hit = (xi1 && input_bit(y, j1, n)) || (xi2 && input_bit(y, j2, n));
            const bool out = output == SearchOutput::Intersect ? hit : !hit;
            return out ? v ^ (std::uint64_t{1} << L) : v;
        };
        return Circuit{{gates::permutation(L + 1, perm), concat({channel(0)}, range(Region::Bob, 0, L))}};
    };
    const std::string name = output == SearchOutput::Intersect ? "grover-sampling-INT" : "grover-sampling-DISJ";
    return Protocol(name, RegisterLayout{m1 + 1 + m2, L, L}, n, {query, answer, report, decide});
}


std::vector<CorpusEntry> protocol_corpus(unsigned n) {
    std::vector<CorpusEntry> c;
    const FunctionName named[] = {FunctionName::EQ, FunctionName::NEQ, FunctionName::DISJ, FunctionName::INT};
    for (auto f : named) {
        const CommMatrix table = build_comm_matrix(f, n);
        c.push_back({trivial_exact_protocol(table), table, true});
        c.push_back({ndet_svd_protocol(canonical_witness(f, n)).protocol, table, false});
    }
    const std::size_t N = std::size_t{1} << n;
    c.push_back({always_accept_protocol(n), CommMatrix(n, FunctionName::Custom, std::vector<std::uint8_t>(N * N, 1)),
                 true});
    if (n == 1 || n == 2 || n == 4) {
        const unsigned m1 = ceil_log2(n);
        c.push_back({grover_sampling_protocol(n, m1, SearchOutput::Intersect), std::nullopt, false});
        c.push_back({grover_sampling_protocol(n, m1, SearchOutput::Disjoint), std::nullopt, false});
    }
    return c;
}

}  // namespace qcc
