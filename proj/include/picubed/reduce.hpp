#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

#include "picubed/real.hpp"

namespace picubed {

inline constexpr std::uint64_t kChunkSize = 4096;

/// Sum of a term sequence together with the sum of term magnitudes (the
/// latter feeds the rounding allowance).
struct SumPair {
  Real sum;
  Real abs_sum;
};

namespace detail {

template <class TermFn>
SumPair sum_chunk(std::uint64_t begin, std::uint64_t end, const TermFn& term, mpfr_prec_t bits) {
  SumPair acc{Real(bits), Real(bits)};
  for (std::uint64_t i = begin; i < end; ++i) {
    Real t = term(i);
    acc.sum += t;
    acc.abs_sum += abs(t);
  }
  return acc;
}

}  // namespace detail

/// Sums term(0) + ... + term(count-1) in a fixed association: ascending
/// within chunks of kChunkSize, then chunk partials combined pairwise in a
/// binary tree. The result is bit-identical whether or not `parallel` is set.
///
/// `term` must be callable concurrently from several threads when `parallel`
/// is true.
template <class TermFn>
SumPair chunked_sum(std::uint64_t count, const TermFn& term, mpfr_prec_t bits, bool parallel = false) {
  const std::uint64_t chunks = (count + kChunkSize - 1) / kChunkSize;
  if (chunks == 0) return SumPair{Real(bits), Real(bits)};

  std::vector<SumPair> partial;
  partial.reserve(chunks);
  for (std::uint64_t c = 0; c < chunks; ++c) partial.push_back(SumPair{Real(bits), Real(bits)});

  auto run_chunk = [&](std::uint64_t c) {
    const std::uint64_t begin = c * kChunkSize;
    const std::uint64_t end = std::min(count, begin + kChunkSize);
    partial[c] = detail::sum_chunk(begin, end, term, bits);
  };

  const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  if (!parallel || chunks == 1 || hw == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::exception_ptr> errors(hw);
    std::vector<std::thread> workers;
    const unsigned nthreads = static_cast<unsigned>(std::min<std::uint64_t>(hw, chunks));
    for (unsigned w = 0; w < nthreads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::uint64_t c = next++; c < chunks; c = next++) run_chunk(c);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Pairwise tree: level by level, (0,1), (2,3), ...; an odd tail carries up.
  while (partial.size() > 1) {
    std::vector<SumPair> next_level;
    next_level.reserve((partial.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < partial.size(); i += 2) {
      next_level.push_back(SumPair{partial[i].sum + partial[i + 1].sum,
                                   partial[i].abs_sum + partial[i + 1].abs_sum});
    }
    if (partial.size() % 2 == 1) next_level.push_back(std::move(partial.back()));
    partial = std::move(next_level);
  }
  return std::move(partial.front());
}

}  // namespace picubed
