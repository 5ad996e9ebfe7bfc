// Copyright 2026 The Spintomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spintomo/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spintomo/errors.hpp"
#include "spintomo/parallel.hpp"

namespace spintomo {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Band-limited ramp kernel; quadratic Taylor expansion near s = 0 keeps the
// evaluation stable where the two singular terms nearly cancel.
double ramp_kernel(double s, double kc) {
  const double ks = kc * s;
  if (std::abs(ks) < 1e-4) {
    return kc * kc - 0.25 * kc * kc * ks * ks;
  }
  return 2.0 * (kc * std::sin(ks) / s + (std::cos(ks) - 1.0) / (s * s));
}

}  // namespace

Sinogram Sinogram::from_samples(const SampleSet& samples, int n_bins, double q_max) {
  if (n_bins < 2) throw std::invalid_argument("from_samples: n_bins must be >= 2");
  if (!(q_max > 0.0)) throw std::invalid_argument("from_samples: q_max must be > 0");
  if (samples.records.empty())
    throw invariant_error("from_samples: empty sample set");
  const SchemeTraits traits = samples.traits();
  if (traits.pairs)
    throw std::invalid_argument("from_samples: scheme '" + samples.scheme +
                                "' yields paired outcomes, not quadrature marginals");

  Sinogram sino;
  for (const auto& rec : samples.records) {
    if (std::find(sino.angles.begin(), sino.angles.end(), rec.angle_rad) ==
        sino.angles.end()) {
      sino.angles.push_back(rec.angle_rad);
    }
  }
  const int n_angles = static_cast<int>(sino.angles.size());
  sino.counts = Eigen::MatrixXd::Zero(n_angles, n_bins);
  sino.shots.assign(n_angles, 0);
  sino.bin_width = 2.0 * q_max / n_bins;
  sino.bin_centers.resize(n_bins);
  for (int j = 0; j < n_bins; ++j)
    sino.bin_centers[j] = -q_max + (j + 0.5) * sino.bin_width;

  for (const auto& rec : samples.records) {
    const int k = static_cast<int>(
        std::find(sino.angles.begin(), sino.angles.end(), rec.angle_rad) -
        sino.angles.begin());
    ++sino.shots[k];
    const double q = traits.outcome_sign * rec.outcome_1;
    const double pos = (q + q_max) / sino.bin_width;
    if (pos < 0.0 || pos >= n_bins) {
      ++sino.dropped;
      continue;
    }
    sino.counts(k, static_cast<int>(pos)) += 1.0;
  }
  return sino;
}

ReconGrid fbp_reconstruct(const Sinogram& sinogram, const FbpOptions& opt) {
  const int n_angles = static_cast<int>(sinogram.angles.size());
  if (n_angles == 0) throw invariant_error("fbp_reconstruct: sinogram has no angles");
  if (!(opt.cutoff > 0.0))
    throw std::invalid_argument("fbp_reconstruct: cutoff must be > 0");
  const int n_bins = static_cast<int>(sinogram.bin_centers.size());
  const double dtheta = kPi / n_angles;

  // Per-angle relative frequencies; rows with zero shots contribute nothing.
  Eigen::MatrixXd freq = sinogram.counts;
  for (int k = 0; k < n_angles; ++k) {
    if (sinogram.shots[k] > 0) freq.row(k) /= static_cast<double>(sinogram.shots[k]);
  }

  ReconGrid grid;
  grid.spec = opt.grid;
  grid.spec.kind = "W";
  const int n = grid.spec.resolution;
  grid.values.setZero(n, n);

  std::vector<double> coss(n_angles), sins(n_angles);
  for (int k = 0; k < n_angles; ++k) {
    coss[k] = std::cos(sinogram.angles[k]);
    sins[k] = std::sin(sinogram.angles[k]);
  }

  const double scale = dtheta / (4.0 * kPi * kPi);
  parallel_for(static_cast<std::size_t>(n), opt.threads,
               [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double x = grid.spec.axis(static_cast<int>(i));
      for (int j = 0; j < n; ++j) {
        const double p = grid.spec.axis(j);
        double acc = 0.0;
        for (int k = 0; k < n_angles; ++k) {
          const double proj = x * coss[k] + p * sins[k];
          double inner = 0.0;
          for (int b = 0; b < n_bins; ++b) {
            const double f = freq(k, b);
            if (f != 0.0) inner += f * ramp_kernel(proj - sinogram.bin_centers[b], opt.cutoff);
          }
          acc += inner;
        }
        grid.values(static_cast<Eigen::Index>(i), j) = scale * acc;
      }
    }
  });
  return grid;
}

double fbp_point(const Sinogram& sinogram, double x, double p, double cutoff) {
  const int n_angles = static_cast<int>(sinogram.angles.size());
  if (n_angles == 0) throw invariant_error("fbp_point: sinogram has no angles");
  if (!(cutoff > 0.0)) throw std::invalid_argument("fbp_point: cutoff must be > 0");
  const int n_bins = static_cast<int>(sinogram.bin_centers.size());
  double acc = 0.0;
  for (int k = 0; k < n_angles; ++k) {
    if (sinogram.shots[k] == 0) continue;
    const double proj = x * std::cos(sinogram.angles[k]) + p * std::sin(sinogram.angles[k]);
    double inner = 0.0;
    for (int b = 0; b < n_bins; ++b) {
      const double c = sinogram.counts(k, b);
      if (c != 0.0) inner += c * ramp_kernel(proj - sinogram.bin_centers[b], cutoff);
    }
    acc += inner / static_cast<double>(sinogram.shots[k]);
  }
  return acc * (kPi / n_angles) / (4.0 * kPi * kPi);
}

ReconGrid husimi_estimate(const SampleSet& samples, const HusimiOptions& opt) {
  const SchemeTraits traits = samples.traits();
  if (!traits.pairs)
    throw std::invalid_argument("husimi_estimate: scheme '" + samples.scheme +
                                "' does not yield paired outcomes");
  const std::size_t n_samples = samples.records.size();
  if (n_samples == 0) throw invariant_error("husimi_estimate: empty sample set");

  const double theta = opt.rotation_override.value_or(traits.rotation_rad);
  const double ct = std::cos(theta);
  const double st = std::sin(theta);

  // Undo the residual rotation: measured (u', v') = R(theta)(u, v), so
  // (u, v) = (u' cos - v' sin, u' sin + v' cos).
  Eigen::VectorXd u(n_samples), v(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const double up = samples.records[s].outcome_1;
    const double vp = samples.records[s].outcome_2;
    u[static_cast<Eigen::Index>(s)] = up * ct - vp * st;
    v[static_cast<Eigen::Index>(s)] = up * st + vp * ct;
  }

  double hu = opt.bandwidth, hv = opt.bandwidth;
  if (!(opt.bandwidth > 0.0)) {
    const double n16 = std::pow(static_cast<double>(n_samples), -1.0 / 6.0);
    const auto dev = [&](const Eigen::VectorXd& w) {
      const double m = w.mean();
      return std::sqrt((w.array() - m).square().mean());
    };
    hu = dev(u) * n16;
    hv = dev(v) * n16;
  }
  if (!(hu > 0.0) || !(hv > 0.0))
    throw invariant_error("husimi_estimate: degenerate bandwidth");

  ReconGrid grid;
  grid.spec = opt.grid;
  grid.spec.kind = "Q";
  const int n = grid.spec.resolution;
  grid.values.setZero(n, n);

  Eigen::VectorXd gu(n), gv(n);
  for (int i = 0; i < n; ++i) gu[i] = gv[i] = grid.spec.axis(i);

  // Chunked kernel evaluation: per-sample exponential columns are filled in
  // parallel, but the rank-update accumulation runs in a fixed order so the
  // estimate is independent of thread count.
  constexpr std::size_t kChunk = 8192;
  Eigen::MatrixXd eu(n, kChunk), ev(n, kChunk);
  for (std::size_t base = 0; base < n_samples; base += kChunk) {
    const std::size_t m = std::min(kChunk, n_samples - base);
    parallel_for(m, opt.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t s = begin; s < end; ++s) {
        const auto col = static_cast<Eigen::Index>(s);
        eu.col(col) = (-(gu.array() - u[static_cast<Eigen::Index>(base + s)]).square() /
                       (2.0 * hu * hu)).exp();
        ev.col(col) = (-(gv.array() - v[static_cast<Eigen::Index>(base + s)]).square() /
                       (2.0 * hv * hv)).exp();
      }
    });
    grid.values.noalias() +=
        eu.leftCols(static_cast<Eigen::Index>(m)) *
        ev.leftCols(static_cast<Eigen::Index>(m)).transpose();
  }
  grid.values *= 1.0 / (static_cast<double>(n_samples) * 2.0 * kPi * hu * hv);
  return grid;
}

ReconGrid analytic_reference(const ReferenceState& state, const GridSpec& spec) {
  if (spec.kind != "W" && spec.kind != "Q")
    throw std::invalid_argument("analytic_reference: kind must be W or Q");
  ReconGrid grid;
  grid.spec = spec;
  const int n = spec.resolution;
  grid.values.resize(n, n);

  const double x0 = std::sqrt(2.0) * state.alpha.real();
  const double p0 = std::sqrt(2.0) * state.alpha.imag();
  const double th = std::tanh(state.r);
  const double sech = 1.0 / std::cosh(state.r);

  for (int i = 0; i < n; ++i) {
    const double a = spec.axis(i);
    for (int j = 0; j < n; ++j) {
      const double b = spec.axis(j);
      double val = 0.0;
      if (spec.kind == "W") {
        switch (state.kind) {
          case ReferenceState::Kind::Vacuum:
            val = std::exp(-(a * a + b * b)) / kPi;
            break;
          case ReferenceState::Kind::Coherent:
            val = std::exp(-((a - x0) * (a - x0) + (b - p0) * (b - p0))) / kPi;
            break;
          case ReferenceState::Kind::Squeezed:
            val = std::exp(-std::exp(2.0 * state.r) * a * a -
                           std::exp(-2.0 * state.r) * b * b) / kPi;
            break;
          case ReferenceState::Kind::FockOne: {
            const double r2 = a * a + b * b;
            val = (2.0 * r2 - 1.0) * std::exp(-r2) / kPi;
            break;
          }
        }
      } else {
        switch (state.kind) {
          case ReferenceState::Kind::Vacuum:
            val = std::exp(-(a * a + b * b)) / kPi;
            break;
          case ReferenceState::Kind::Coherent: {
            const double du = a - state.alpha.real();
            const double dv = b - state.alpha.imag();
            val = std::exp(-(du * du + dv * dv)) / kPi;
            break;
          }
          case ReferenceState::Kind::Squeezed:
            val = sech * std::exp(-(1.0 + th) * a * a - (1.0 - th) * b * b) / kPi;
            break;
          case ReferenceState::Kind::FockOne: {
            const double r2 = a * a + b * b;
            val = r2 * std::exp(-r2) / kPi;
            break;
          }
        }
      }
      grid.values(i, j) = val;
    }
  }
  return grid;
}

ReconGrid q_from_wigner(const ReconGrid& wigner) {
  if (wigner.spec.kind != "W")
    throw std::invalid_argument("q_from_wigner: input grid kind must be W");
  const int n = wigner.spec.resolution;
  const double ext = wigner.spec.extent;

  // The smoothing kernel exp(-s^2) has std 1/sqrt(2) per axis; demand four of
  // those between the significant support of W and the grid edge so the
  // truncated convolution is accurate to ~1e-6 in mass.
  const double peak = wigner.values.cwiseAbs().maxCoeff();
  if (!(peak > 0.0)) throw invariant_error("q_from_wigner: all-zero grid");
  double support = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (std::abs(wigner.values(i, j)) > 1e-3 * peak) {
        const double xa = wigner.spec.axis(i);
        const double pb = wigner.spec.axis(j);
        support = std::max(support, std::hypot(xa, pb));
      }
    }
  }
  const double margin = 2.0 * std::sqrt(2.0);
  if (support + margin > ext)
    throw invariant_error("q_from_wigner: Wigner support within " +
                          std::to_string(ext - support) +
                          " of the grid edge; need at least " +
                          std::to_string(margin));

  ReconGrid out;
  out.spec = GridSpec{ext / std::sqrt(2.0), n, "Q"};

  // Separable kernel: Q(u,v) = (2/pi) dA sum_ab W(a,b) e^{-(x_a-√2u)^2} e^{-(p_b-√2v)^2}.
  Eigen::MatrixXd e(n, n);
  for (int a = 0; a < n; ++a) {
    const double xa = wigner.spec.axis(a);
    for (int i = 0; i < n; ++i) {
      const double su = std::sqrt(2.0) * out.spec.axis(i);
      e(a, i) = std::exp(-(xa - su) * (xa - su));
    }
  }
  const double pref = 2.0 / kPi * wigner.spec.cell_area();
  out.values.noalias() = pref * (e.transpose() * wigner.values * e);
  return out;
}

GridMoments grid_moments(const ReconGrid& grid) {
  const int n = grid.spec.resolution;
  GridMoments m;
  double sx = 0.0, sp = 0.0, sxx = 0.0, spp = 0.0, sxp = 0.0, s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = grid.spec.axis(i);
    for (int j = 0; j < n; ++j) {
      const double p = grid.spec.axis(j);
      const double w = grid.values(i, j);
      s += w;
      sx += w * x;
      sp += w * p;
      sxx += w * x * x;
      spp += w * p * p;
      sxp += w * x * p;
    }
  }
  const double area = grid.spec.cell_area();
  m.mass = s * area;
  if (s == 0.0) throw invariant_error("grid_moments: zero total mass");
  const double mx = sx / s, mp = sp / s;
  m.mean << mx, mp;
  m.cov << sxx / s - mx * mx, sxp / s - mx * mp,
           sxp / s - mx * mp, spp / s - mp * mp;
  return m;
}

Eigen::Vector2d grid_peak(const ReconGrid& grid) {
  Eigen::Index i0 = 0, j0 = 0;
  grid.values.maxCoeff(&i0, &j0);
  const int n = grid.spec.resolution;

  // Sub-cell refinement: 1-d quadratic through the peak and its neighbours.
  auto refine = [&](Eigen::Index idx, double fm, double f0, double fp) {
    double d = 0.0;
    const double denom = fm - 2.0 * f0 + fp;
    if (denom < 0.0) d = std::clamp(0.5 * (fm - fp) / denom, -0.5, 0.5);
    return grid.spec.axis(static_cast<int>(idx)) + d * grid.spec.cell();
  };

  double x = grid.spec.axis(static_cast<int>(i0));
  double p = grid.spec.axis(static_cast<int>(j0));
  if (i0 > 0 && i0 + 1 < n)
    x = refine(i0, grid.values(i0 - 1, j0), grid.values(i0, j0), grid.values(i0 + 1, j0));
  if (j0 > 0 && j0 + 1 < n)
    p = refine(j0, grid.values(i0, j0 - 1), grid.values(i0, j0), grid.values(i0, j0 + 1));
  return {x, p};
}

}  // namespace spintomo
