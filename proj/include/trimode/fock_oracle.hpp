// Copyright 2026 The trimode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Brute-force truncated Fock-space engine for three bosonic modes.
//
// Basis ordering is mode1 (x) mode2 (x) mode3 with mode 3 fastest:
// index(n1, n2, n3) = (n1 * cutoff + n2) * cutoff + n3. Every closed form in
// the library is checked against this engine at small squeezing.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "trimode/error.hpp"
#include "trimode/gaussian_state.hpp"
#include "trimode/symplectic_core.hpp"

namespace trimode {

using SparseOperator = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using DenseOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr int kMinCutoff = 2;
inline constexpr int kMaxCutoff = 32;
/// Cutoff used by the acceptance checks: keeps the tail mass below 1e-8 for
/// lambda <= 0.3 and |alpha_j| <= 1.
inline constexpr int kDefaultCutoff = 14;

/// Truncated three-mode state. `tail_mass` is the probability discarded when
/// the state was prepared (0 for exact basis states).
struct KetVector {
    int cutoff = 0;
    StateVector amplitudes;
    double tail_mass = 0.0;

    double norm() const { return amplitudes.norm(); }
};

/// Single-mode lowering matrix on levels 0..levels-1.
inline DenseOperator lowering_matrix(int levels) {
    DenseOperator a = DenseOperator::Zero(levels, levels);
    for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

/// Operator matrices of the truncated three-mode space. Read-only after
/// construction.
class FockArena {
   public:
    explicit FockArena(int cutoff) : cutoff_(cutoff) {
        if (cutoff < kMinCutoff || cutoff > kMaxCutoff) {
            throw InvalidParameter("cutoff must lie in [2, 32], got " + std::to_string(cutoff));
        }
        dim_ = static_cast<Eigen::Index>(cutoff) * cutoff * cutoff;
        const DenseOperator a1 = lowering_matrix(cutoff);
        const DenseOperator a1_dag = a1.adjoint();
        const double r2 = std::sqrt(2.0);
        const Complex i(0.0, 1.0);
        for (int j = 0; j < 3; ++j) {
            a_[j] = embed(a1, j);
            q_[j] = embed((a1 + a1_dag) / r2, j);
            p_[j] = embed((a1 - a1_dag) / (i * r2), j);
        }
        x3_ = (q_[0] + q_[1] + q_[2]) / std::sqrt(6.0);
        y3_ = (p_[0] + p_[1] + p_[2]) / std::sqrt(6.0);
        collective_ = (a_[0] + a_[1] + a_[2]) / std::sqrt(3.0);

        // i [Q1 (P2 + P3) + Q2 (P1 + P3) + Q3 (P1 + P2)]; S3 = exp(lambda * generator).
        SparseOperator g(dim_, dim_);
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                if (j != k) g += SparseOperator(q_[j] * p_[k]);
            }
        }
        generator_ = i * g;
        generator_.makeCompressed();

        parity_.resize(dim_);
        for (Eigen::Index idx = 0; idx < dim_; ++idx) {
            const auto n = occupation(idx);
            parity_(idx) = ((n[0] + n[1] + n[2]) % 2 == 0) ? 1.0 : -1.0;
        }
    }

    int cutoff() const { return cutoff_; }
    Eigen::Index dim() const { return dim_; }

    Eigen::Index index(int n1, int n2, int n3) const {
        if (n1 < 0 || n2 < 0 || n3 < 0 || n1 >= cutoff_ || n2 >= cutoff_ || n3 >= cutoff_) {
            throw InvalidParameter("occupation outside the truncated space");
        }
        return (static_cast<Eigen::Index>(n1) * cutoff_ + n2) * cutoff_ + n3;
    }

    std::array<int, 3> occupation(Eigen::Index idx) const {
        const int n3 = static_cast<int>(idx % cutoff_);
        const int n2 = static_cast<int>((idx / cutoff_) % cutoff_);
        const int n1 = static_cast<int>(idx / (static_cast<Eigen::Index>(cutoff_) * cutoff_));
        return {n1, n2, n3};
    }

    const SparseOperator& a(int mode) const { return a_.at(static_cast<std::size_t>(mode)); }
    const SparseOperator& q(int mode) const { return q_.at(static_cast<std::size_t>(mode)); }
    const SparseOperator& p(int mode) const { return p_.at(static_cast<std::size_t>(mode)); }
    const SparseOperator& x3() const { return x3_; }
    const SparseOperator& y3() const { return y3_; }
    /// A = (a1 + a2 + a3)/sqrt(3).
    const SparseOperator& collective() const { return collective_; }
    const SparseOperator& generator() const { return generator_; }
    /// Diagonal of (-1)^{n1 + n2 + n3}.
    const Eigen::VectorXd& parity_diagonal() const { return parity_; }

    /// Embeds a single-mode cutoff x cutoff matrix acting on `mode`.
    SparseOperator embed(const DenseOperator& op, int mode) const {
        std::vector<Eigen::Triplet<Complex>> trips;
        const int c = cutoff_;
        const Eigen::Index stride = mode == 0 ? c * c : (mode == 1 ? c : 1);
        for (int m = 0; m < c; ++m) {
            for (int n = 0; n < c; ++n) {
                const Complex v = op(m, n);
                if (v == Complex(0.0)) continue;
                for (Eigen::Index rest = 0; rest < static_cast<Eigen::Index>(c) * c; ++rest) {
                    // Split the remaining two occupations around the stride of `mode`.
                    const Eigen::Index hi = rest / stride;
                    const Eigen::Index lo = rest % stride;
                    const Eigen::Index base = hi * stride * c + lo;
                    trips.emplace_back(base + m * stride, base + n * stride, v);
                }
            }
        }
        SparseOperator out(dim_, dim_);
        out.setFromTriplets(trips.begin(), trips.end());
        return out;
    }

    void check(const KetVector& ket) const {
        if (ket.cutoff != cutoff_ || ket.amplitudes.size() != dim_) {
            throw InvalidParameter("ket does not belong to this arena");
        }
    }

    KetVector basis_ket(int n1, int n2, int n3) const {
        KetVector k{cutoff_, StateVector::Zero(dim_), 0.0};
        k.amplitudes(index(n1, n2, n3)) = 1.0;
        return k;
    }

   private:
    int cutoff_;
    Eigen::Index dim_ = 0;
    std::array<SparseOperator, 3> a_, q_, p_;
    SparseOperator x3_, y3_, collective_, generator_;
    Eigen::VectorXd parity_;
};

inline FockArena build_arena(int cutoff) { return FockArena(cutoff); }

/// Largest allowed residual of U^dag U - I on the low-photon block.
inline constexpr double kUnitarityTol = 1e-6;

/// S3 = exp(lambda K) on a FockArena, applied to vectors by a substepped
/// Taylor series (the dense matrix is only formed on request).
class S3Unitary {
   public:
    S3Unitary(const FockArena& arena, double lambda_param) : arena_(&arena), lambda_(lambda_param) {
        require_finite(lambda_param, "lambda");
        // 1-norm of lambda K bounds the Taylor remainder; substeps keep each
        // step's norm at most kStepNorm.
        double norm1 = 0.0;
        const SparseOperator& g = arena.generator();
        Eigen::VectorXd col_sums = Eigen::VectorXd::Zero(g.cols());
        for (Eigen::Index r = 0; r < g.outerSize(); ++r) {
            for (SparseOperator::InnerIterator it(g, r); it; ++it) col_sums(it.col()) += std::abs(it.value());
        }
        if (col_sums.size() > 0) norm1 = std::abs(lambda_param) * col_sums.maxCoeff();
        substeps_ = std::max(1, static_cast<int>(std::ceil(norm1 / kStepNorm)));
        step_scale_ = lambda_param / substeps_;
    }

    double lambda_param() const { return lambda_; }
    const FockArena& arena() const { return *arena_; }

    /// U v for a block of column vectors.
    DenseOperator apply(const DenseOperator& v) const {
        const SparseOperator& g = arena_->generator();
        DenseOperator cur = v;
        for (int s = 0; s < substeps_; ++s) {
            DenseOperator term = cur;
            DenseOperator sum = cur;
            bool converged = false;
            for (int k = 1; k <= kTermBudget; ++k) {
                term = (g * term) * (step_scale_ / k);
                sum += term;
                if (term.norm() <= 1e-17 * sum.norm()) {
                    converged = true;
                    break;
                }
            }
            if (!converged) throw NumericError("S3Unitary: Taylor series did not converge");
            cur = std::move(sum);
        }
        return cur;
    }

    KetVector apply(const KetVector& ket) const {
        arena_->check(ket);
        KetVector out = ket;
        out.amplitudes = apply(DenseOperator(ket.amplitudes)).col(0);
        return out;
    }

    /// Full matrix; practical for small cutoffs only.
    DenseOperator dense() const { return apply(DenseOperator::Identity(arena_->dim(), arena_->dim())); }

    /// max |(U^dag U - I)_{ij}| over basis states with every n_j <= cutoff / 2.
    double unitarity_residual() const {
        const int top = arena_->cutoff() / 2;
        std::vector<Eigen::Index> block;
        for (int n1 = 0; n1 <= top; ++n1)
            for (int n2 = 0; n2 <= top; ++n2)
                for (int n3 = 0; n3 <= top; ++n3) block.push_back(arena_->index(n1, n2, n3));
        DenseOperator basis = DenseOperator::Zero(arena_->dim(), static_cast<Eigen::Index>(block.size()));
        for (std::size_t c = 0; c < block.size(); ++c) basis(block[c], static_cast<Eigen::Index>(c)) = 1.0;
        const DenseOperator images = apply(basis);
        const DenseOperator gram = images.adjoint() * images;
        return (gram - DenseOperator::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    }

   private:
    static constexpr double kStepNorm = 4.0;
    static constexpr int kTermBudget = 80;

    const FockArena* arena_;
    double lambda_;
    int substeps_ = 1;
    double step_scale_ = 0.0;
};

/// Builds S3 on the arena and verifies unitarity on the low-photon block.
/// Throws TruncationError when the residual exceeds 1e-6.
inline S3Unitary s3_unitary(const FockArena& arena, double lambda_param, bool verify = true) {
    S3Unitary u(arena, lambda_param);
    if (verify) {
        const double residual = u.unitarity_residual();
        if (!(residual <= kUnitarityTol)) {
            throw TruncationError("S3 unitarity residual " + std::to_string(residual) +
                                  " exceeds 1e-6; raise the cutoff or lower lambda");
        }
    }
    return u;
}

/// Normalised truncated product coherent state. Requires |alpha_j|^2 <= cutoff/4.
inline KetVector coherent_ket(const FockArena& arena, const CoherentAmplitudes& alpha) {
    const int c = arena.cutoff();
    std::array<std::vector<Complex>, 3> single;
    double kept = 1.0;
    for (int j = 0; j < 3; ++j) {
        const Complex a = alpha[j];
        if (std::norm(a) > c / 4.0) {
            throw TruncationError("coherent amplitude too large for cutoff " + std::to_string(c));
        }
        auto& v = single[static_cast<std::size_t>(j)];
        v.resize(static_cast<std::size_t>(c));
        Complex amp = std::exp(-0.5 * std::norm(a));
        double mass = 0.0;
        for (int n = 0; n < c; ++n) {
            v[static_cast<std::size_t>(n)] = amp;
            mass += std::norm(amp);
            amp *= a / std::sqrt(static_cast<double>(n + 1));
        }
        kept *= mass;
    }
    KetVector ket{c, StateVector(arena.dim()), std::max(0.0, 1.0 - kept)};
    for (int n1 = 0; n1 < c; ++n1)
        for (int n2 = 0; n2 < c; ++n2)
            for (int n3 = 0; n3 < c; ++n3)
                ket.amplitudes(arena.index(n1, n2, n3)) = single[0][static_cast<std::size_t>(n1)] *
                                                          single[1][static_cast<std::size_t>(n2)] *
                                                          single[2][static_cast<std::size_t>(n3)];
    ket.amplitudes /= ket.amplitudes.norm();
    return ket;
}

/// S3 |alpha> on the arena.
inline KetVector squeezed_coherent_ket(const FockArena& arena, double lambda_param, const CoherentAmplitudes& alpha) {
    return s3_unitary(arena, lambda_param, false).apply(coherent_ket(arena, alpha));
}

/// <ket|O|ket> / <ket|ket>.
inline Complex expect(const FockArena& arena, const KetVector& ket, const SparseOperator& observable) {
    arena.check(ket);
    if (observable.rows() != arena.dim() || observable.cols() != arena.dim()) {
        throw InvalidParameter("observable dimension does not match the arena");
    }
    const StateVector ov = observable * ket.amplitudes;
    return ket.amplitudes.dot(ov) / ket.amplitudes.squaredNorm();
}

/// <(O - <O>)^{order}> for a Hermitian O and even order, by repeated application.
inline double central_moment(const FockArena& arena, const KetVector& ket, const SparseOperator& hermitian, int order) {
    if (order < 2 || order % 2 != 0) throw InvalidParameter("moment order must be even and >= 2");
    const double mean = expect(arena, ket, hermitian).real();
    StateVector phi = ket.amplitudes;
    for (int i = 0; i < order / 2; ++i) phi = (hermitian * phi - mean * phi).eval();
    return phi.squaredNorm() / ket.amplitudes.squaredNorm();
}

/// <(dX3)^{2m}> measured on the ket.
inline double moment_x3(const FockArena& arena, const KetVector& ket, int order) {
    return central_moment(arena, ket, arena.x3(), order);
}

inline double moment_y3(const FockArena& arena, const KetVector& ket, int order) {
    return central_moment(arena, ket, arena.y3(), order);
}

/// <A^dag^k A^k> = ||A^k ket||^2 / ||ket||^2 for the collective mode.
inline double mean_power(const FockArena& arena, const KetVector& ket, int k) {
    arena.check(ket);
    if (k < 1) throw InvalidParameter("k must be >= 1");
    StateVector phi = ket.amplitudes;
    for (int i = 0; i < k; ++i) phi = (arena.collective() * phi).eval();
    return phi.squaredNorm() / ket.amplitudes.squaredNorm();
}

/// Single-mode displacement exp(beta a^dag - beta^* a) restricted to levels
/// 0..levels-1. Computed in a space padded by 48 levels so the retained block
/// matches the untruncated operator.
inline DenseOperator displacement_matrix(Complex beta, int levels) {
    constexpr int kPad = 48;
    const DenseOperator a = lowering_matrix(levels + kPad);
    const DenseOperator gen = beta * a.adjoint() - std::conj(beta) * a;
    return expm_series(gen).topLeftCorner(levels, levels);
}

/// <Pi(beta)> with Pi = prod_j D_j(beta_j) (-1)^{n_j} D_j(beta_j)^dag.
/// Requires |beta_j|^2 <= cutoff/4.
inline double displaced_parity(const FockArena& arena, const KetVector& ket, const std::array<Complex, 3>& beta) {
    arena.check(ket);
    const int c = arena.cutoff();
    // D^dag(beta) = D(-beta), applied mode by mode.
    StateVector phi = ket.amplitudes;
    for (int j = 0; j < 3; ++j) {
        const Complex b = beta[static_cast<std::size_t>(j)];
        if (std::norm(b) > c / 4.0) throw TruncationError("displacement too large for cutoff " + std::to_string(c));
        if (b == Complex(0.0)) continue;
        phi = (arena.embed(displacement_matrix(-b, c), j) * phi).eval();
    }
    const double value =
        (phi.cwiseAbs2().array() * arena.parity_diagonal().array()).sum() / ket.amplitudes.squaredNorm();
    return value;
}

/// Amplitude <n1 n2 n3|ket> (ket assumed normalised).
inline Complex amplitude(const FockArena& arena, const KetVector& ket, int n1, int n2, int n3) {
    arena.check(ket);
    return ket.amplitudes(arena.index(n1, n2, n3));
}

struct ConvergenceRow {
    int cutoff = 0;
    double value = 0.0;
    std::optional<double> delta;  // value(cutoff) - value(previous cutoff)
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    /// False when some |delta| grows relative to the previous one.
    bool monotone = true;
};

/// Evaluates `quantity(cutoff)` over an increasing list of at least two cutoffs.
inline ConvergenceReport convergence_report(const std::function<double(int)>& quantity, const std::vector<int>& cutoffs) {
    if (cutoffs.size() < 2) throw InvalidParameter("convergence_report needs at least two cutoffs");
    for (std::size_t i = 1; i < cutoffs.size(); ++i) {
        if (cutoffs[i] <= cutoffs[i - 1]) throw InvalidParameter("cutoffs must be strictly increasing");
    }
    ConvergenceReport report;
    for (int c : cutoffs) {
        ConvergenceRow row{c, quantity(c), std::nullopt};
        if (!report.rows.empty()) row.delta = row.value - report.rows.back().value;
        report.rows.push_back(row);
    }
    for (std::size_t i = 2; i < report.rows.size(); ++i) {
        if (std::abs(*report.rows[i].delta) > std::abs(*report.rows[i - 1].delta)) report.monotone = false;
    }
    return report;
}

}  // namespace trimode
