#pragma once

#include "slope_field.hpp"

#include <optional>

namespace webcurv {

// omega = M dx + N dy with first partials at a point.
struct FormJet {
    cplx M, Mx, My, N, Nx, Ny;
};

struct Eta {
    cplx A, B;
    cplx residual;  // the third defining relation, unused by the solve
};

// eta = A dx + B dy with d(delta_st omega_r) = eta ^ delta_st omega_r, delta_st omega_r = omega_s ^ omega_t.
Eta eta_forms(const std::array<FormJet, 3>& forms);
// Same for omega_i = dy - p_i dx.
Eta eta_triple(const std::array<BranchJet, 3>& jets);
// d eta_rst as the coefficient of dx ^ dy.
cplx triple_curvature(const std::array<BranchJet, 3>& jets);

struct CurvatureOptions {
    bool cross_check = true;
    real fd_step = 1e-6L;
    real threshold = kAdmissibility;
};

struct CurvatureSample {
    cplx x = 0, y = 0;
    bool admissible = false;
    std::string reason;  // why a sample is inadmissible
    std::optional<Inadmissibility> why;
    std::optional<cplx> K;
    std::vector<cplx> contributions;  // one per triple r<s<t, lexicographic
    real separation = 0, conditioning = 0, max_abs_slope = 0;
    bool rotated = false;
    std::optional<cplx> K_fd;
    bool cross_check_flag = false;
};

inline constexpr real kRotation = 1.0L / 3;

// Evaluates K on a web; switches to coordinates rotated by kRotation near vertical slopes.
class CurvatureField {
public:
    explicit CurvatureField(const AffineWeb& w);
    explicit CurvatureField(NumericWeb w);

    CurvatureSample at(cplx x, cplx y, const CurvatureOptions& opts = {}) const;
    const NumericWeb& web() const { return w_; }

private:
    CurvatureSample direct(const NumericWeb& w, cplx x, cplx y, const CurvatureOptions& opts) const;
    NumericWeb w_;
    std::optional<NumericWeb> rot_;
};

CurvatureSample curvature_at(const AffineWeb& w, cplx x, cplx y, const CurvatureOptions& opts = {});

enum class Verdict { Flat, NotFlat, Inconclusive };
std::string to_string(Verdict v);

struct FlatnessVerdict {
    int samples = 0, admissible = 0, rejected = 0;
    real max_abs_K = 0, median_abs_K = 0, scale = 0, threshold = 0;
    int above_margin = 0;  // samples with |K| > 10^3 * threshold * scale
    Verdict verdict = Verdict::Inconclusive;
    std::vector<CurvatureSample> records;
};

struct FlatnessOptions {
    real box = 2;  // samples in [-box, box]^2
    int retry_factor = 50;
    int threads = 0;  // 0: WEBCURV_THREADS or hardware concurrency
    real perturbation = 1e-2L;
    std::uint64_t perturbation_seed = 0x0e7d;
    bool cross_check = true;
};

FlatnessVerdict flatness_check(const AffineWeb& w, int n_samples, std::uint64_t seed, real threshold = 1e-6L,
                               const FlatnessOptions& opts = {});
FlatnessVerdict flatness_check(const NumericWeb& w, int n_samples, std::uint64_t seed, real threshold = 1e-6L,
                               const FlatnessOptions& opts = {});

struct LemmaProbe {
    real x = 0;
    cplx lead, lead_expected;  // coefficient of y^-(a1+1) in A
    cplx next, next_expected;  // coefficient of y^-a1 in A
    cplx residue, residue_expected;  // coefficient of y^-1 in B
    bool next_checked = false;
    bool pass = false;
};

struct LemmaReport {
    std::array<int, 3> a{};
    std::vector<LemmaProbe> probes;
    bool pass = false;
};

// 3-web omega_i = dx + y^{a_i} h_i dy; compares the Laurent coefficients of eta near y = 0 with the lemma.
LemmaReport lemma_curv_oracle(const std::array<int, 3>& a, const std::array<MultiPoly, 3>& h,
                              const std::vector<real>& probe_x, real tol = 1e-3L);

}  // namespace webcurv
