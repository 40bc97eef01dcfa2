#include <algorithm>
#include <array>
#include <limits>
#include <thread>

#include "drazinkit/genpairs.hpp"

namespace drazinkit {

namespace {

constexpr std::size_t kMaxSearchDim = 3;

/// Residue matrix of dimension n <= 3, row-major.
using Small = std::array<std::uint32_t, kMaxSearchDim * kMaxSearchDim>;

std::uint64_t saturating_mul(std::uint64_t x, std::uint64_t y) {
  if (x != 0 && y > std::numeric_limits<std::uint64_t>::max() / x) return std::numeric_limits<std::uint64_t>::max();
  return x * y;
}

class SmallArith {
 public:
  SmallArith(std::uint64_t p, std::size_t n) : p_(p), n_(n) {}

  Small mul(const Small& x, const Small& y) const {
    Small out{};
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < n_; ++k) acc += static_cast<std::uint64_t>(x[i * n_ + k]) * y[k * n_ + j];
        out[i * n_ + j] = static_cast<std::uint32_t>(acc % p_);
      }
    }
    return out;
  }

  Small scale(std::uint64_t s, const Small& x) const {
    Small out{};
    for (std::size_t i = 0; i < n_ * n_; ++i) out[i] = static_cast<std::uint32_t>(s * x[i] % p_);
    return out;
  }

  bool is_zero(const Small& x) const {
    for (std::size_t i = 0; i < n_ * n_; ++i) {
      if (x[i] != 0) return false;
    }
    return true;
  }

 private:
  std::uint64_t p_;
  std::size_t n_;
};

std::vector<std::uint64_t> entry_list(const SearchSpec& spec) {
  if (!spec.entry_bound || spec.entry_bound->empty()) {
    std::vector<std::uint64_t> all(spec.p);
    for (std::uint64_t r = 0; r < spec.p; ++r) all[r] = r;
    return all;
  }
  std::vector<std::uint64_t> entries = *spec.entry_bound;
  for (std::uint64_t e : entries) {
    if (e >= spec.p) {
      throw Error(ErrorCode::InvalidArgument, "entry " + std::to_string(e) + " is not a residue mod " + std::to_string(spec.p));
    }
  }
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  return entries;
}

void validate(const SearchSpec& spec) {
  if (!is_prime(spec.p)) throw Error(ErrorCode::InvalidArgument, "search modulus " + std::to_string(spec.p) + " is not prime");
  if (spec.p > std::numeric_limits<std::uint32_t>::max()) throw Error(ErrorCode::InvalidArgument, "search modulus too large");
  if (spec.n == 0 || spec.n > kMaxSearchDim) {
    throw Error(ErrorCode::InvalidArgument, "search dimension must be 1..3, got " + std::to_string(spec.n));
  }
  if (spec.relation.type() == RelationType::LambdaCommute) {
    const FieldDescriptor lf = spec.relation.lambda().field();
    if (!lf.is_prime_field() || lf.modulus() != spec.p) {
      throw Error(ErrorCode::FieldMismatch, "lambda must be an element of F" + std::to_string(spec.p));
    }
  }
}

}  // namespace

std::uint64_t search_space_size(const SearchSpec& spec) {
  const std::uint64_t choices = spec.entry_bound && !spec.entry_bound->empty()
                                    ? entry_list(spec).size()
                                    : spec.p;
  std::uint64_t matrices = 1;
  for (std::size_t i = 0; i < spec.n * spec.n; ++i) matrices = saturating_mul(matrices, choices);
  return saturating_mul(matrices, matrices);
}

std::vector<MatrixPair> exhaustive_search(const SearchSpec& spec) {
  validate(spec);
  const std::uint64_t space = search_space_size(spec);
  if (space > spec.budget) {
    throw Error(ErrorCode::BudgetExceeded,
                "search space of " + std::to_string(space) + " pairs exceeds the budget of " + std::to_string(spec.budget),
                {space});
  }

  const std::vector<std::uint64_t> entries = entry_list(spec);
  const std::size_t n = spec.n;
  const std::size_t cells = n * n;
  const SmallArith arith(spec.p, n);

  // Matrix index -> entries, most significant digit first, so increasing
  // index is lexicographic order of the row-major residues.
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < cells; ++i) count *= entries.size();
  std::vector<Small> mats(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t cell = cells; cell-- > 0;) {
      mats[idx][cell] = static_cast<std::uint32_t>(entries[rest % entries.size()]);
      rest /= entries.size();
    }
  }
  std::vector<Small> cubes;
  const RelationType type = spec.relation.type();
  if (type != RelationType::LambdaCommute) {
    cubes.reserve(count);
    for (const Small& m : mats) cubes.push_back(arith.mul(m, arith.mul(m, m)));
  }
  const std::uint64_t lambda = type == RelationType::LambdaCommute ? spec.relation.lambda().residue() : 0;

  auto satisfies = [&](std::uint64_t ia, std::uint64_t ib) {
    const Small& a = mats[ia];
    const Small& b = mats[ib];
    const Small ab = arith.mul(a, b);
    if (spec.require_nontrivial && (arith.is_zero(b) || arith.is_zero(ab))) return false;
    const Small ba = arith.mul(b, a);
    switch (type) {
      case RelationType::LambdaCommute:
        return ab == arith.scale(lambda, ba);
      case RelationType::CrossCube:
        return arith.mul(cubes[ia], b) == ba && arith.mul(cubes[ib], a) == ab;
      case RelationType::SwappedCube:
        return arith.mul(a, cubes[ib]) == ba && arith.mul(b, cubes[ia]) == ab;
    }
    return false;
  };

  // Shard on the index of a (its leading entries); concatenating shards in
  // order reproduces the single-threaded ordering exactly.
  const std::size_t jobs = std::max<std::size_t>(1, std::min<std::uint64_t>(spec.jobs, count));
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> shard_hits(jobs);
  auto run_shard = [&](std::size_t shard) {
    const std::uint64_t lo = count * shard / jobs;
    const std::uint64_t hi = count * (shard + 1) / jobs;
    for (std::uint64_t ia = lo; ia < hi; ++ia) {
      for (std::uint64_t ib = 0; ib < count; ++ib) {
        if (satisfies(ia, ib)) shard_hits[shard].emplace_back(ia, ib);
      }
    }
  };
  if (jobs == 1) {
    run_shard(0);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (std::size_t s = 0; s < jobs; ++s) workers.emplace_back(run_shard, s);
    for (auto& w : workers) w.join();
  }

  const FieldDescriptor field = FieldDescriptor::prime(spec.p);
  auto to_matrix = [&](const Small& s) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, Scalar::from_int(field, static_cast<long long>(s[i * n + j])));
    }
    return m;
  };
  std::vector<MatrixPair> out;
  for (const auto& hits : shard_hits) {
    for (const auto& [ia, ib] : hits) out.emplace_back(to_matrix(mats[ia]), to_matrix(mats[ib]));
  }
  return out;
}

}  // namespace drazinkit
