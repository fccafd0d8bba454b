#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "paaa/barycentric.hpp"
#include "paaa/grid.hpp"
#include "paaa/loewner.hpp"

namespace testing
{

using paaa::Axis;
using paaa::Complex;

inline Complex random_complex(std::mt19937_64 &rng)
{
  std::normal_distribution<double> n;
  return {n(rng), n(rng)};
}

inline double rel_diff(Complex a, Complex b)
{
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline Axis random_axis(std::size_t n, std::mt19937_64 &rng)
{
  Axis ax;
  while (ax.size() < n)
    ax.push_back(random_complex(rng));
  return ax;
}

inline paaa::TensorGrid random_grid(const paaa::Shape &shape, std::mt19937_64 &rng)
{
  std::vector<Axis> axes;
  for (auto n : shape)
    axes.push_back(random_axis(n, rng));
  std::vector<Complex> values(paaa::element_count(shape));
  for (auto &v : values)
    v = random_complex(rng);
  return paaa::make_grid(std::move(axes), std::move(values), shape);
}

// Random support of size counts[d] on each axis, in random order.
inline paaa::Partition random_partition(const paaa::Shape &grid_shape, const paaa::Shape &counts,
                                        std::mt19937_64 &rng)
{
  std::vector<std::vector<std::size_t>> support;
  for (std::size_t d = 0; d < grid_shape.size(); ++d)
  {
    std::vector<std::size_t> idx(grid_shape[d]);
    for (std::size_t i = 0; i < idx.size(); ++i)
      idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(counts[d]);
    support.push_back(idx);
  }
  return paaa::Partition(support);
}

inline Eigen::VectorXcd random_unit_probe(Eigen::Index n, std::mt19937_64 &rng)
{
  Eigen::VectorXcd u(n);
  for (Eigen::Index i = 0; i < n; ++i)
    u(i) = random_complex(rng);
  return u / u.norm();
}

// Direct double sum of the two-variable barycentric form at a point away from the support.
inline Complex direct_eval_2d(const paaa::BarycentricModel &m, Complex s, Complex p)
{
  const auto &sig = m.support_points()[0];
  const auto &pi = m.support_points()[1];
  Complex n = 0.0, d = 0.0;
  for (std::size_t i = 0; i < sig.size(); ++i)
    for (std::size_t j = 0; j < pi.size(); ++j)
    {
      const auto k = i * pi.size() + j;
      const Complex c = 1.0 / ((s - sig[i]) * (p - pi[j]));
      n += m.support_values()[k] * m.weights()[k] * c;
      d += m.weights()[k] * c;
    }
  return n / d;
}

// Two-variable least-squares matrix built block by block: frequency-support rows
// (block diagonal in the s-support index), parameter-support rows (block diagonal in the
// p-support index) and the fully free rows with two Cauchy factors. Row order is the block
// order; the returned tuples name each row's grid indices.
struct BlockOracle
{
  Eigen::MatrixXcd matrix;
  std::vector<paaa::MultiIndex> tuples;
};

inline BlockOracle block_stacked_loewner(const paaa::TensorGrid &g, const paaa::Partition &part)
{
  const auto &S = part.support(0), &P = part.support(1);
  std::vector<std::size_t> Sh, Ph;
  for (std::size_t i = 0; i < g.shape()[0]; ++i)
    if (!part.contains(0, i))
      Sh.push_back(i);
  for (std::size_t j = 0; j < g.shape()[1]; ++j)
    if (!part.contains(1, j))
      Ph.push_back(j);
  const std::size_t k = S.size(), q = P.size();
  auto h = [&](std::size_t i, std::size_t j) { return g.value(paaa::MultiIndex{i, j}); };
  auto s = [&](std::size_t i) { return g.axis(0)[i]; };
  auto p = [&](std::size_t j) { return g.axis(1)[j]; };

  BlockOracle o;
  const std::size_t rows = k * Ph.size() + Sh.size() * q + Sh.size() * Ph.size();
  o.matrix = Eigen::MatrixXcd::Zero(rows, k * q);
  std::size_t r = 0;
  // Support s, free p: one 1-D Loewner matrix in p per support s, on the diagonal.
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t l : Ph)
    {
      for (std::size_t b = 0; b < q; ++b)
        o.matrix(r, a * q + b) = (h(S[a], l) - h(S[a], P[b])) / (p(l) - p(P[b]));
      o.tuples.push_back({S[a], l});
      ++r;
    }
  // Free s, support p: 1-D Loewner matrices in s, columns interleaved with stride q.
  for (std::size_t i : Sh)
    for (std::size_t b = 0; b < q; ++b)
    {
      for (std::size_t a = 0; a < k; ++a)
        o.matrix(r, a * q + b) = (h(i, P[b]) - h(S[a], P[b])) / (s(i) - s(S[a]));
      o.tuples.push_back({i, P[b]});
      ++r;
    }
  // Both free: the two-variable divided differences.
  for (std::size_t i : Sh)
    for (std::size_t l : Ph)
    {
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < q; ++b)
          o.matrix(r, a * q + b) =
            (h(i, l) - h(S[a], P[b])) / ((s(i) - s(S[a])) * (p(l) - p(P[b])));
      o.tuples.push_back({i, l});
      ++r;
    }
  return o;
}

// Largest entrywise deviation of assemble() from the block oracle after matching rows by
// tuple, each entry measured relative to max(1, |oracle entry|).
inline double block_oracle_deviation(const paaa::TensorGrid &g, const paaa::Partition &part)
{
  const auto sys = paaa::assemble(g, part);
  const auto o = block_stacked_loewner(g, part);
  if (sys.matrix.rows() != o.matrix.rows() || sys.matrix.cols() != o.matrix.cols())
    return INFINITY;
  double dev = 0.0;
  for (std::size_t r = 0; r < o.tuples.size(); ++r)
  {
    const auto it = std::find(sys.row_map.begin(), sys.row_map.end(), o.tuples[r]);
    if (it == sys.row_map.end())
      return INFINITY;
    const auto row = static_cast<Eigen::Index>(it - sys.row_map.begin());
    for (Eigen::Index c = 0; c < o.matrix.cols(); ++c)
      dev = std::max(dev, std::abs(sys.matrix(row, c) - o.matrix(r, c)) /
                            std::max(1.0, std::abs(o.matrix(r, c))));
  }
  return dev;
}

}  // namespace testing
