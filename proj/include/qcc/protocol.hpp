#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcc/tensor.hpp"

namespace qcc {

enum class Party { Alice, Bob };
enum class Region { Alice, Channel, Bob };

/// One qubit of the tripartite register, addressed relative to its region.
struct Wire {
    Region region;
    unsigned index;

    friend bool operator==(const Wire&, const Wire&) = default;
};

inline Wire alice(unsigned i) { return {Region::Alice, i}; }
inline Wire channel(unsigned i) { return {Region::Channel, i}; }
inline Wire bob(unsigned i) { return {Region::Bob, i}; }

struct Gate {
    CMatrix unitary;
    std::vector<Wire> wires;  // wires[0] is the most significant index bit of `unitary`
};

using Circuit = std::vector<Gate>;

/// Moves the (classical-basis) content of a channel qubit into a fresh party
/// qubit and leaves |0> on the channel. This is how a party takes possession
/// of a message it has received; it is not communication.
struct Receive {
    unsigned channel_qubit;
    unsigned party_qubit;
};

struct RegisterLayout {
    unsigned alice_qubits = 0;
    unsigned channel_qubits = 1;
    unsigned bob_qubits = 0;

    static constexpr unsigned kMaxQubits = 24;

    unsigned total() const { return alice_qubits + channel_qubits + bob_qubits; }
    unsigned global(Wire w) const;
    unsigned party_qubits(Party p) const { return p == Party::Alice ? alice_qubits : bob_qubits; }
};

/// One message of the protocol. The party acts on its own register and on the
/// channel qubits [window_start, window_start + message_length), after
/// optionally receiving earlier message qubits into its register.
struct ProtocolStep {
    Party party = Party::Alice;
    unsigned window_start = 0;
    unsigned message_length = 0;
    std::vector<Receive> receive;
    std::function<Circuit(std::uint64_t input)> build;
    std::string label;
};

class Protocol {
public:
    Protocol(std::string name, RegisterLayout layout, unsigned input_bits, std::vector<ProtocolStep> steps);

    const std::string& name() const { return name_; }
    const RegisterLayout& layout() const { return layout_; }
    unsigned input_bits() const { return input_bits_; }
    const std::vector<ProtocolStep>& steps() const { return steps_; }

    /// Sum of message lengths: the qubit cost of the protocol.
    unsigned declared_cost() const { return declared_cost_; }

    /// Builds the circuit of step `s` on `input` and checks it against the
    /// step's contract (unitary gates, wires inside party register or window).
    Circuit circuit(std::size_t s, std::uint64_t input) const;

private:
    std::string name_;
    RegisterLayout layout_;
    unsigned input_bits_;
    std::vector<ProtocolStep> steps_;
    unsigned declared_cost_ = 0;
};

struct SimulationResult {
    CVector final_state;
    double accept_prob = 0.0;
    unsigned cost = 0;
    /// Distinct channel qubits written by gates, per step.
    std::vector<unsigned> touched_channel_qubits;
};

SimulationResult simulate(const Protocol& p, std::uint64_t x, std::uint64_t y);

/// 2^n x 2^n table of acceptance probabilities, row x, column y.
class AcceptanceMatrix {
public:
    AcceptanceMatrix(unsigned n, std::vector<double> values);

    unsigned n() const { return n_; }
    std::size_t size() const { return std::size_t{1} << n_; }
    /// Entry clamped to [0, 1].
    double at(std::uint64_t x, std::uint64_t y) const;
    const std::vector<double>& raw() const { return values_; }
    CMatrix as_matrix() const;

    std::string to_csv() const;
    std::string to_json() const;
    static AcceptanceMatrix from_json(const std::string& text);

private:
    unsigned n_;
    std::vector<double> values_;
};

inline constexpr unsigned kDefaultMaxAcceptanceBits = 6;

AcceptanceMatrix acceptance_matrix(const Protocol& p, unsigned max_bits = kDefaultMaxAcceptanceBits);

/// Transcript-indexed decomposition of the final state:
/// sum_i A_i(x) (x) |channel_i> (x) B_i(y), where channel_i is the channel
/// content fixed by transcript i (the output bit is channel qubit 0).
struct TranscriptDecomposition {
    unsigned ell = 0;
    unsigned out_bit_index = 0;  // transcript position of the last write of channel qubit 0
    std::vector<CVector> alice;  // indexed by transcript, most significant bit = first bit sent
    std::vector<CVector> bob;
    std::vector<std::uint64_t> channel_content;  // channel qubit 0 is the most significant bit
    std::uint64_t out_mask = 0;                  // bit of channel_content holding the output

    /// Transcripts whose final output bit is 1.
    std::vector<std::uint64_t> accepting_transcripts() const;
    CVector reconstruct(const RegisterLayout& layout) const;
};

/// Per-transcript vectors of a single party; depends only on that party's input.
struct PartyBranches {
    unsigned ell = 0;
    std::vector<CVector> vectors;
    std::vector<std::uint64_t> channel_content;
};

inline constexpr unsigned kMaxTranscriptBits = 12;

PartyBranches party_branches(const Protocol& p, Party party, std::uint64_t input,
                             unsigned max_ell = kMaxTranscriptBits);

TranscriptDecomposition transcript_decompose(const Protocol& p, std::uint64_t x, std::uint64_t y,
                                             unsigned max_ell = kMaxTranscriptBits);

struct RankBoundReport {
    std::size_t rank = 0;
    std::uint64_t bound = 0;  // 2^(2*cost - 2)
    bool ok = false;
    /// Exact rank of the snapped rational table, when the entries are dyadic.
    std::optional<std::size_t> exact_rank;
};

RankBoundReport rank_bound_audit(const Protocol& p, double tol = kDefaultRankTol,
                                 unsigned max_bits = kDefaultMaxAcceptanceBits);

}  // namespace qcc
