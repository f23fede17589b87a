#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qcc/comm_matrix.hpp"
#include "qcc/protocol.hpp"

namespace qcc {

/// Alice sends x as one n-qubit message; Bob computes f(x, y) reversibly and
/// replies with one qubit. Cost n + 1, acceptance matrix equal to f.
Protocol trivial_exact_protocol(const CommMatrix& f);

/// Alice flips the output qubit; accepts everything at cost 1.
Protocol always_accept_protocol(unsigned n);

/// One-round non-deterministic protocol built from a singular value
/// decomposition of the transposed witness matrix.
struct NdetProtocolBundle {
    Protocol protocol;
    CMatrix source_matrix;
    std::size_t rank = 0;               // r
    std::vector<double> per_row_norm;   // c_x; 0 on all-zero rows
    std::size_t dead_rows = 0;          // rows handled by the reject flag
    unsigned message_qubits = 0;        // Alice's message length
};

NdetProtocolBundle ndet_svd_protocol(const CMatrix& m, double tol = kDefaultRankTol);

/// Communication cost of one distributed AND query on a block of B indices.
unsigned and_oracle_cost(std::uint64_t block_size);

/// Index register width used by the AND query on a block of B indices.
unsigned and_oracle_index_qubits(std::uint64_t block_size);

/// Protocol fragment realizing |i>|b> -> |i>|b xor (x_i and y_i)> on Alice's
/// register, for B-bit inputs. Alice's register holds the index (most
/// significant first), then the target b, then a scratch qubit; the fragment
/// starts from the basis state |index>|target>. Cost 2(ceil(log2 B) + 1).
Protocol distributed_and_oracle(std::uint64_t block_size, std::uint64_t index, unsigned target);

enum class SearchOutput { Intersect, Disjoint };

/// Distributed Grover protocol with a classical check at the end: one search
/// iteration over a padded index register of `search_qubits` qubits plus an
/// independent uniformly sampled index; Bob outputs whether either candidate
/// is a common one (or the negation for Disjoint). Its acceptance
/// probability depends on x and y only through x AND y.
Protocol grover_sampling_protocol(unsigned n, unsigned search_qubits, SearchOutput output);

struct CorpusEntry {
    Protocol protocol;
    /// Function the protocol computes exactly, or whose 1-set it accepts
    /// non-deterministically; empty for protocols with no named target.
    std::optional<CommMatrix> target;
    bool exact = false;
};

/// Every zoo protocol that can be instantiated on n-bit inputs.
std::vector<CorpusEntry> protocol_corpus(unsigned n);

}  // namespace qcc
