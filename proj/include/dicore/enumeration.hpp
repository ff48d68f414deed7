// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

// Counting admissible sequences of the sequence model, exactly (GMP) and in
// log space (double), plus exhaustive oracles for tiny instances.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "dicore/digraph.hpp"

namespace dicore {

// A split of [N] into A = [nu] and B = rest with mu1 edges inside A, mu12
// edges A -> B, mu2 edges inside B and none B -> A (A is a source set).
struct SplitParams {
  int n = 0;
  int nu = 0;
  std::size_t mu1 = 0;
  std::size_t mu12 = 0;
  std::size_t mu2 = 0;
  int k1 = 0;
  int k2 = 0;

  std::size_t m() const { return mu1 + mu12 + mu2; }
  // mu1 >= k1 nu, mu1 + mu12 >= k2 nu, mu12 + mu2 >= k1 (N - nu), mu2 >= k2 (N - nu).
  bool feasible() const;
};

// [x^a] f_k(x)^b, exact. Zero when a < k b.
mpq_class coeff_tail_power(std::size_t a, int k, std::size_t b);

// S_{N,M} = (M!)^2 [z^M] f_{k1}(z)^N [w^M] f_{k2}(w)^N, the number of
// admissible sequences in [N]^{2M}.
mpz_class sequence_count(int n, std::size_t m, int k1, int k2);

// Number of (A, sequence) pairs where A is a source set of size nu with the
// given edge split:
//   M! C(N,nu) (mu1+mu12)! (mu12+mu2)! / mu12!
//     * [x^mu1] f_{k1}^nu [y^mu2] f_{k2}^{N-nu} [y^{mu1+mu12}] f_{k2}^nu [x^{mu12+mu2}] f_{k1}^{N-nu}
mpz_class split_sequence_count(const SplitParams& p);

// True iff coeff_tail_power(a,k,b) <= f_k(x)^b / x^a, compared in log space.
bool saddle_bound_check(std::size_t a, int k, std::size_t b, double x);

// log(f_k(x)^b / x^a) - log([x^a] f_k^b); +inf when the coefficient is zero.
double saddle_bound_log_ratio(std::size_t a, int k, std::size_t b, double x);

// Log-space mirror of the exact counts. `rel_error` is a running bound on
// |computed/true - 1| from rounding.
struct LogValue {
  double log = 0.0;
  double rel_error = 0.0;
};

LogValue log_coeff_tail_power(std::size_t a, int k, std::size_t b);
LogValue log_sequence_count(int n, std::size_t m, int k1, int k2);
LogValue log_split_sequence_count(const SplitParams& p);

// --- exhaustive oracles -------------------------------------------------

// Admissible sequence as 2M slots: slots[2r] -> slots[2r+1].
using SequencePredicate = std::function<bool(std::span<const Vertex> slots, int n)>;

inline constexpr double kSequenceEnumerationLimit = 1e8;
inline constexpr double kSubsetEnumerationLimit = 1e7;

// Enumerates [N]^{2M} and counts admissible sequences accepted by `pred`
// (all of them if empty). GuardError when N^{2M} > 1e8.
std::uint64_t brute_force_sequence_count(int n, std::size_t m, int k1, int k2,
                                         const SequencePredicate& pred = {});

namespace predicates {
bool induces_simple(std::span<const Vertex> slots, int n);
// Some vertex set of size nu receives no edge from its complement.
SequencePredicate has_source_set_of_size(int nu);
}  // namespace predicates

struct DicoreCensus {
  std::uint64_t total = 0;
  std::uint64_t strongly_connected = 0;
};

// All simple digraphs on [N] with M edges, min in-degree >= k1 and min
// out-degree >= k2, by enumerating M-subsets of the N(N-1) ordered pairs.
// GuardError when C(N(N-1), M) > 1e7.
DicoreCensus brute_force_simple_dicores(int n, std::size_t m, int k1, int k2);

}  // namespace dicore
