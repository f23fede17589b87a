#include "qcc/protocol.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "qcc/errors.hpp"
#include "qcc/exact_rank.hpp"

namespace qcc {
namespace {

Region region_of(Party p) { return p == Party::Alice ? Region::Alice : Region::Bob; }

bool bit_set(std::size_t index, unsigned qubit, unsigned width) {
    return (index >> (width - 1 - qubit)) & 1u;
}

std::uint64_t with_bit(std::uint64_t word, unsigned qubit, unsigned width, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (width - 1 - qubit);
    return value ? (word | mask) : (word & ~mask);
}

// Applies the receive list of a step to a full state vector.
void receive_into(std::span<Complex> state, const RegisterLayout& layout, Party party,
                  const std::vector<Receive>& receive) {
    const unsigned total = layout.total();
    for (const auto& r : receive) {
        const unsigned gc = layout.global(channel(r.channel_qubit));
        const unsigned gp = layout.global({region_of(party), r.party_qubit});
        double stale = 0.0;
        for (std::size_t i = 0; i < state.size(); ++i)
            if (bit_set(i, gp, total)) stale += std::norm(state[i]);
        if (stale > 1e-18) throw ContractViolation("receive target qubit is not in |0>");
        const std::size_t mc = std::size_t{1} << (total - 1 - gc);
        const std::size_t mp = std::size_t{1} << (total - 1 - gp);
        for (std::size_t i = 0; i < state.size(); ++i)
            if ((i & mc) && !(i & mp)) std::swap(state[i], state[(i ^ mc) | mp]);
    }
}

SimulationResult run(const Protocol& p, const std::vector<const Circuit*>& circuits) {
    const auto& layout = p.layout();
    if (layout.total() > RegisterLayout::kMaxQubits)
        throw CapacityError("register layout exceeds the simulator capacity");
    const unsigned total = layout.total();
    std::vector<Complex> state(std::size_t{1} << total, Complex{});
    state[0] = 1.0;

    SimulationResult out;
    out.cost = p.declared_cost();
    std::vector<unsigned> targets;
    for (std::size_t s = 0; s < p.steps().size(); ++s) {
        const auto& step = p.steps()[s];
        receive_into(state, layout, step.party, step.receive);
        std::vector<unsigned> touched;
        for (const auto& g : *circuits[s]) {
            targets.clear();
            for (const auto& w : g.wires) {
                targets.push_back(layout.global(w));
                if (w.region == Region::Channel) touched.push_back(w.index);
            }
            apply_on_qubits_inplace(state, g.unitary, targets);
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (unsigned c : touched)
            if (c < step.window_start || c >= step.window_start + step.message_length)
                throw ContractViolation("gate touched a channel qubit outside its message window");
        out.touched_channel_qubits.push_back(static_cast<unsigned>(touched.size()));
    }

    const unsigned out_qubit = layout.global(channel(0));
    for (std::size_t i = 0; i < state.size(); ++i)
        if (bit_set(i, out_qubit, total)) out.accept_prob += std::norm(state[i]);
    out.final_state = CVector(std::move(state));
    return out;
}

}  // namespace

unsigned RegisterLayout::global(Wire w) const {
    switch (w.region) {
        case Region::Alice: return w.index;
        case Region::Channel: return alice_qubits + w.index;
        case Region::Bob: return alice_qubits + channel_qubits + w.index;
    }
    return 0;
}

Protocol::Protocol(std::string name, RegisterLayout layout, unsigned input_bits, std::vector<ProtocolStep> steps)
    : name_(std::move(name)), layout_(layout), input_bits_(input_bits), steps_(std::move(steps)) {
    if (layout_.channel_qubits < 1) throw ArgumentError("the channel needs at least the output qubit");
    if (input_bits_ > 32) throw CapacityError("input length too large");
    for (std::size_t s = 0; s < steps_.size(); ++s) {
        const auto& st = steps_[s];
        const Party expected = s % 2 == 0 ? Party::Alice : Party::Bob;
        if (st.party != expected) throw ContractViolation("steps must alternate, starting with Alice");
        if (st.window_start + st.message_length > layout_.channel_qubits)
            throw ContractViolation("message window exceeds the channel");
        if (!st.build) throw ArgumentError("step has no circuit builder");
        for (const auto& r : st.receive)
            if (r.channel_qubit >= layout_.channel_qubits || r.party_qubit >= layout_.party_qubits(st.party))
                throw ArgumentError("receive refers to a qubit outside the layout");
        declared_cost_ += st.message_length;
    }
}

Circuit Protocol::circuit(std::size_t s, std::uint64_t input) const {
    if (input_bits_ < 64 && (input >> input_bits_) != 0) throw ArgumentError("input has more bits than declared");
    const auto& st = steps_.at(s);
    Circuit c = st.build(input);
    const Region own = region_of(st.party);
    for (const auto& g : c) {
        if (g.unitary.rows() != (std::size_t{1} << g.wires.size()) || g.unitary.cols() != g.unitary.rows())
            throw ContractViolation("gate dimension does not match its wires");
        for (std::size_t i = 0; i < g.wires.size(); ++i) {
            const Wire w = g.wires[i];
            for (std::size_t j = 0; j < i; ++j)
                if (g.wires[j] == w) throw ContractViolation("gate lists a wire twice");
            if (w.region == own) {
                if (w.index >= layout_.party_qubits(st.party)) throw ContractViolation("wire outside party register");
            } else if (w.region == Region::Channel) {
                if (w.index < st.window_start || w.index >= st.window_start + st.message_length)
                    throw ContractViolation("gate touches a channel qubit outside the message window");
            } else {
                throw ContractViolation("gate touches the other party's register");
            }
        }
        if (!is_unitary(g.unitary)) throw ContractViolation("step gate is not unitary");
    }
    return c;
}

SimulationResult simulate(const Protocol& p, std::uint64_t x, std::uint64_t y) {
    if (p.layout().total() > RegisterLayout::kMaxQubits)
        throw CapacityError("register layout exceeds the simulator capacity");
    std::vector<Circuit> built;
    built.reserve(p.steps().size());
    for (std::size_t s = 0; s < p.steps().size(); ++s)
        built.push_back(p.circuit(s, p.steps()[s].party == Party::Alice ? x : y));
    std::vector<const Circuit*> ptrs;
    for (const auto& c : built) ptrs.push_back(&c);
    return run(p, ptrs);
}

AcceptanceMatrix acceptance_matrix(const Protocol& p, unsigned max_bits) {
    const unsigned n = p.input_bits();
    if (n > max_bits) throw CapacityError("acceptance matrix too large for the configured guard");
    if (p.layout().total() > RegisterLayout::kMaxQubits)
        throw CapacityError("register layout exceeds the simulator capacity");
    const std::size_t size = std::size_t{1} << n;
    const std::size_t steps = p.steps().size();
    // circuits depend on one party's input only; build each once
    std::vector<std::vector<Circuit>> by_input(size, std::vector<Circuit>(steps));
    std::vector<std::vector<Circuit>> by_input_bob(size, std::vector<Circuit>(steps));
    for (std::size_t v = 0; v < size; ++v)
        for (std::size_t s = 0; s < steps; ++s) {
            if (p.steps()[s].party == Party::Alice) by_input[v][s] = p.circuit(s, v);
            else by_input_bob[v][s] = p.circuit(s, v);
        }
    std::vector<double> values(size * size);
    std::vector<const Circuit*> ptrs(steps);
    for (std::size_t x = 0; x < size; ++x)
        for (std::size_t y = 0; y < size; ++y) {
            for (std::size_t s = 0; s < steps; ++s)
                ptrs[s] = p.steps()[s].party == Party::Alice ? &by_input[x][s] : &by_input_bob[y][s];
            values[x * size + y] = run(p, ptrs).accept_prob;
        }
    return AcceptanceMatrix(n, std::move(values));
}

AcceptanceMatrix::AcceptanceMatrix(unsigned n, std::vector<double> values) : n_(n), values_(std::move(values)) {
    if (n_ > 16) throw CapacityError("acceptance matrix too large");
    if (values_.size() != size() * size()) throw ArgumentError("acceptance matrix has the wrong number of entries");
    for (double v : values_)
        if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) throw ArgumentError("acceptance probability outside [0, 1]");
}

double AcceptanceMatrix::at(std::uint64_t x, std::uint64_t y) const {
    return std::clamp(values_.at(x * size() + y), 0.0, 1.0);
}

CMatrix AcceptanceMatrix::as_matrix() const {
    CMatrix m(size(), size());
    for (std::size_t x = 0; x < size(); ++x)
        for (std::size_t y = 0; y < size(); ++y) m(x, y) = at(x, y);
    return m;
}

std::vector<std::uint64_t> TranscriptDecomposition::accepting_transcripts() const {
    std::vector<std::uint64_t> s;
    // channel content is stored most significant = channel qubit 0
    for (std::uint64_t i = 0; i < channel_content.size(); ++i)
        if (channel_content[i] & out_mask) s.push_back(i);
    return s;
}

CVector TranscriptDecomposition::reconstruct(const RegisterLayout& layout) const {
    const unsigned C = layout.channel_qubits, Bq = layout.bob_qubits;
    CVector full(std::size_t{1} << layout.total());
    for (std::size_t i = 0; i < alice.size(); ++i) {
        for (std::size_t a = 0; a < alice[i].dim(); ++a) {
            if (alice[i][a] == Complex{}) continue;
            for (std::size_t b = 0; b < bob[i].dim(); ++b) {
                const std::size_t idx = (a << (C + Bq)) | (channel_content[i] << Bq) | b;
                full[idx] += alice[i][a] * bob[i][b];
            }
        }
    }
    return full;
}

PartyBranches party_branches(const Protocol& p, Party party, std::uint64_t input, unsigned max_ell) {
    if (p.declared_cost() > max_ell) throw CapacityError("transcript too long to enumerate");
    const auto& layout = p.layout();
    const unsigned C = layout.channel_qubits;
    const unsigned P = layout.party_qubits(party);
    if (P + C > RegisterLayout::kMaxQubits) throw CapacityError("party register too large");

    struct Branch {
        std::uint64_t content;
        CVector v;
    };
    std::vector<Branch> branches;
    branches.push_back({0, CVector::basis(std::size_t{1} << P, 0)});
    unsigned ell = 0;

    for (std::size_t s = 0; s < p.steps().size(); ++s) {
        const auto& st = p.steps()[s];
        const unsigned L = st.message_length, ws = st.window_start;
        const bool own = st.party == party;
        const Circuit circ = own ? p.circuit(s, input) : Circuit{};

        std::vector<Branch> next;
        next.reserve(branches.size() << L);
        for (auto& br : branches) {
            for (const auto& r : st.receive) {
                const bool bit = (br.content >> (C - 1 - r.channel_qubit)) & 1u;
                br.content = with_bit(br.content, r.channel_qubit, C, false);
                if (!own) continue;
                const std::size_t mp = std::size_t{1} << (P - 1 - r.party_qubit);
                double stale = 0.0;
                for (std::size_t i = 0; i < br.v.dim(); ++i)
                    if (i & mp) stale += std::norm(br.v[i]);
                if (stale > 1e-18) throw ContractViolation("receive target qubit is not in |0>");
                if (bit)
                    for (std::size_t i = 0; i < br.v.dim(); ++i)
                        if (!(i & mp)) std::swap(br.v[i], br.v[i | mp]);
            }
            std::uint64_t window_bits = 0;
            for (unsigned j = 0; j < L; ++j)
                window_bits = (window_bits << 1) | ((br.content >> (C - 1 - ws - j)) & 1u);

            // local register: party qubits and window qubits in global order
            std::vector<Complex> local(std::size_t{1} << (P + L), Complex{});
            auto local_index = [&](std::size_t pv, std::uint64_t w) {
                return party == Party::Alice ? (pv << L) | w : (w << P) | pv;
            };
            if (own) {
                for (std::size_t pv = 0; pv < br.v.dim(); ++pv) local[local_index(pv, window_bits)] = br.v[pv];
                std::vector<unsigned> targets;
                for (const auto& g : circ) {
                    targets.clear();
                    for (const auto& w : g.wires) {
                        if (w.region == Region::Channel)
                            targets.push_back(party == Party::Alice ? P + (w.index - ws) : w.index - ws);
                        else
                            targets.push_back(party == Party::Alice ? w.index : L + w.index);
                    }
                    apply_on_qubits_inplace(local, g.unitary, targets);
                }
            }
            for (std::uint64_t w = 0; w < (std::uint64_t{1} << L); ++w) {
                std::uint64_t content = br.content;
                for (unsigned j = 0; j < L; ++j)
                    content = with_bit(content, ws + j, C, (w >> (L - 1 - j)) & 1u);
                CVector v(br.v.dim());
                if (own) {
                    for (std::size_t pv = 0; pv < v.dim(); ++pv) v[pv] = local[local_index(pv, w)];
                } else {
                    v = br.v;
                }
                next.push_back({content, std::move(v)});
            }
        }
        branches = std::move(next);
        ell += L;
    }

    PartyBranches out;
    out.ell = ell;
    for (auto& br : branches) {
        out.vectors.push_back(std::move(br.v));
        out.channel_content.push_back(br.content);
    }
    return out;
}

TranscriptDecomposition transcript_decompose(const Protocol& p, std::uint64_t x, std::uint64_t y, unsigned max_ell) {
    auto a = party_branches(p, Party::Alice, x, max_ell);
    auto b = party_branches(p, Party::Bob, y, max_ell);
    if (a.channel_content != b.channel_content)
        throw NumericalFailure("party transcripts disagree on the channel content");
    TranscriptDecomposition d;
    d.ell = a.ell;
    d.out_mask = std::uint64_t{1} << (p.layout().channel_qubits - 1);
    d.out_bit_index = d.ell;
    unsigned offset = 0;
    for (const auto& st : p.steps()) {
        if (st.message_length > 0 && st.window_start == 0) d.out_bit_index = offset;
        offset += st.message_length;
    }
    d.alice = std::move(a.vectors);
    d.bob = std::move(b.vectors);
    d.channel_content = std::move(a.channel_content);
    return d;
}

RankBoundReport rank_bound_audit(const Protocol& p, double tol, unsigned max_bits) {
    const auto P = acceptance_matrix(p, max_bits);
    const CMatrix m = P.as_matrix();
    RankBoundReport r;
    r.rank = numeric_rank(m, tol);
    const unsigned ell = p.declared_cost();
    if (ell == 0) r.bound = 0;
    else if (2 * ell - 2 >= 64) r.bound = std::numeric_limits<std::uint64_t>::max();
    else r.bound = std::uint64_t{1} << (2 * ell - 2);
    r.ok = r.rank <= r.bound;
    if (auto snapped = snap_to_dyadic(m, 20)) {
        r.exact_rank = exact_rank(*snapped);
        r.ok = r.ok && *r.exact_rank <= r.bound;
    }
    return r;
}

}  // namespace qcc
