#include "curvature.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <random>
#include <thread>

namespace webcurv {

namespace {

// value with its x and y partials
struct Dual {
    cplx v = 0, x = 0, y = 0;
    Dual() = default;
    Dual(cplx value, cplx dx = 0, cplx dy = 0) : v(value), x(dx), y(dy) {}
};
Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.x + b.x, a.y + b.y}; }
Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.x - b.x, a.y - b.y}; }
Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.x * b.v + a.v * b.x, a.y * b.v + a.v * b.y}; }
Dual operator/(const Dual& a, const Dual& b) {
    cplx q = a.v / b.v;
    return {q, (a.x - q * b.x) / b.v, (a.y - q * b.y) / b.v};
}

template <class T>
struct Jet {
    T M, Mx, My, N, Nx, Ny;
};

template <class T>
std::array<T, 3> solve_eta(const std::array<Jet<T>, 3>& f) {
    std::array<T, 3> R;
    for (int r = 0; r < 3; ++r) {
        const auto &s = f[(r + 1) % 3], &t = f[(r + 2) % 3], &w = f[r];
        T g = s.M * t.N - s.N * t.M;
        T gx = s.Mx * t.N + s.M * t.Nx - s.Nx * t.M - s.N * t.Mx;
        T gy = s.My * t.N + s.M * t.Ny - s.Ny * t.M - s.N * t.My;
        R[r] = (gx * w.N + g * w.Nx - gy * w.M - g * w.My) / g;
    }
    T det = f[0].M * f[1].N - f[0].N * f[1].M;
    T A = (f[0].M * R[1] - f[1].M * R[0]) / det;
    T B = (f[0].N * R[1] - f[1].N * R[0]) / det;
    return {A, B, A * f[2].N - B * f[2].M - R[2]};
}

Jet<Dual> dual_jet(const BranchJet& j) {
    return {Dual(-j.p, -j.px, -j.py), Dual(-j.px, -j.pxx, -j.pxy), Dual(-j.py, -j.pxy, -j.pyy),
            Dual(1), Dual(0), Dual(0)};
}

Jet<cplx> plain_jet(const BranchJet& j) { return {-j.p, -j.px, -j.py, 1, 0, 0}; }

int thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("WEBCURV_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, 8);
}

template <class Fn>
void parallel_for(int n, int threads, Fn fn) {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    auto work = [&] {
        for (int i = next++; i < n; i = next++) fn(i);
    };
    for (int t = 1; t < std::min(threads, n); ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
}

std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Eta eta_forms(const std::array<FormJet, 3>& forms) {
    std::array<Jet<cplx>, 3> f;
    for (int i = 0; i < 3; ++i)
        f[i] = {forms[i].M, forms[i].Mx, forms[i].My, forms[i].N, forms[i].Nx, forms[i].Ny};
    auto r = solve_eta(f);
    return {r[0], r[1], r[2]};
}

Eta eta_triple(const std::array<BranchJet, 3>& jets) {
    for (int i = 0; i < 3; ++i)
        if (jets[i].p == jets[(i + 1) % 3].p) throw Error(ErrorCode::Degenerate, "eta_triple needs distinct slopes");
    auto r = solve_eta<cplx>({plain_jet(jets[0]), plain_jet(jets[1]), plain_jet(jets[2])});
    return {r[0], r[1], r[2]};
}

cplx triple_curvature(const std::array<BranchJet, 3>& jets) {
    auto r = solve_eta<Dual>({dual_jet(jets[0]), dual_jet(jets[1]), dual_jet(jets[2])});
    return r[1].x - r[0].y;
}

CurvatureField::CurvatureField(const AffineWeb& w) : CurvatureField(NumericWeb(w)) {}

CurvatureField::CurvatureField(NumericWeb w) : w_(std::move(w)) {
    if (w_.k() >= 3) rot_ = w_.rotated(kRotation);
}

CurvatureSample CurvatureField::direct(const NumericWeb& w, cplx x, cplx y, const CurvatureOptions& opts) const {
    CurvatureSample s;
    s.x = x;
    s.y = y;
    SlopeSet ss;
    std::vector<BranchJet> jets;
    try {
        ss = slope_roots(w, x, y, opts.threshold);
        for (auto p : ss.slopes) jets.push_back(branch_jet(w, x, y, p, opts.threshold));
    } catch (const InadmissiblePoint& e) {
        s.reason = e.what();
        s.why = e.why();
        return s;
    }
    for (auto p : ss.slopes) s.max_abs_slope = std::max(s.max_abs_slope, std::abs(p));
    s.separation = ss.separation;
    s.conditioning = ss.conditioning;
    s.admissible = true;
    const std::size_t k = jets.size();
    cplx K = 0;
    real biggest = 0;
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t a = r + 1; a < k; ++a)
            for (std::size_t t = a + 1; t < k; ++t) {
                cplx c = triple_curvature({jets[r], jets[a], jets[t]});
                s.contributions.push_back(c);
                biggest = std::max(biggest, std::abs(c));
                K += c;
            }
    s.K = K;
    if (!opts.cross_check || k < 3) return s;

    // central differences of eta along matched branches
    const real h = opts.fd_step;
    auto etas_at = [&](cplx dx, cplx dy) -> std::optional<std::vector<Eta>> {
        SlopeSet n;
        try {
            n = slope_roots(w, x + dx, y + dy, 0);
        } catch (const Error&) {
            return std::nullopt;
        }
        std::vector<BranchJet> nj(k);
        std::vector<bool> used(k, false);
        for (std::size_t i = 0; i < k; ++i) {
            cplx pred = jets[i].p + jets[i].px * dx + jets[i].py * dy;
            std::size_t best = k;
            for (std::size_t c = 0; c < k; ++c)
                if (!used[c] && (best == k || std::abs(n.slopes[c] - pred) < std::abs(n.slopes[best] - pred))) best = c;
            used[best] = true;
            try {
                nj[i] = branch_jet(w, x + dx, y + dy, n.slopes[best], 0);
            } catch (const Error&) {
                return std::nullopt;
            }
        }
        std::vector<Eta> out;
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t a = r + 1; a < k; ++a)
                for (std::size_t t = a + 1; t < k; ++t) out.push_back(eta_triple({nj[r], nj[a], nj[t]}));
        return out;
    };
    auto xp = etas_at(h, 0), xm = etas_at(-h, 0), yp = etas_at(0, h), ym = etas_at(0, -h);
    if (!xp || !xm || !yp || !ym) return s;
    cplx Kfd = 0;
    for (std::size_t i = 0; i < xp->size(); ++i)
        Kfd += ((*xp)[i].B - (*xm)[i].B - (*yp)[i].A + (*ym)[i].A) / (2 * h);
    s.K_fd = Kfd;
    s.cross_check_flag = std::abs(Kfd - K) > 1e-4L * std::max({std::abs(K), biggest, real(1e-300L)});
    return s;
}

CurvatureSample CurvatureField::at(cplx x, cplx y, const CurvatureOptions& opts) const {
    CurvatureSample s = direct(w_, x, y, opts);
    // near-vertical slopes lose digits in the p-chart; redo in rotated coordinates
    bool vertical = s.admissible ? s.max_abs_slope > 1e4L : s.why == Inadmissibility::SlopeAtInfinity;
    if (!rot_ || !vertical) return s;
    const real c = std::cos(kRotation), sn = std::sin(kRotation);
    CurvatureSample r = direct(*rot_, c * x + sn * y, -sn * x + c * y, opts);
    r.x = x;
    r.y = y;
    r.rotated = true;
    return r;
}

CurvatureSample curvature_at(const AffineWeb& w, cplx x, cplx y, const CurvatureOptions& opts) {
    return CurvatureField(w).at(x, y, opts);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Flat: return "flat";
        case Verdict::NotFlat: return "not-flat";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

FlatnessVerdict flatness_check(const AffineWeb& w, int n_samples, std::uint64_t seed, real threshold,
                               const FlatnessOptions& opts) {
    return flatness_check(NumericWeb(w), n_samples, seed, threshold, opts);
}

FlatnessVerdict flatness_check(const NumericWeb& w, int n_samples, std::uint64_t seed, real threshold,
                               const FlatnessOptions& opts) {
    if (n_samples < 1) throw Error(ErrorCode::InvalidArgument, "flatness_check needs at least one sample");
    FlatnessVerdict v;
    v.threshold = threshold;
    if (w.k() < 3) {
        v.verdict = Verdict::Flat;
        return v;
    }
    CurvatureField field(w), pert(w.perturbed(opts.perturbation, opts.perturbation_seed));
    CurvatureOptions co;
    co.cross_check = opts.cross_check;
    const int threads = thread_count(opts.threads);
    const int budget = opts.retry_factor * n_samples;

    std::vector<CurvatureSample> accepted;
    std::vector<real> pert_abs;
    for (int start = 0; static_cast<int>(accepted.size()) < n_samples; start += n_samples) {
        if (start >= budget)
            throw Error(ErrorCode::Numeric, "could not find " + std::to_string(n_samples) +
                                                " admissible sample points within the retry budget");
        const int batch = std::min(n_samples, budget - start);
        std::vector<CurvatureSample> got(static_cast<std::size_t>(batch)), got_p(static_cast<std::size_t>(batch));
        parallel_for(batch, threads, [&](int i) {
            std::mt19937_64 g(mix(seed ^ mix(static_cast<std::uint64_t>(start + i))));
            std::uniform_real_distribution<double> u(-static_cast<double>(opts.box), static_cast<double>(opts.box));
            cplx x = u(g), y = u(g);
            got[i] = field.at(x, y, co);
            if (got[i].admissible) got_p[i] = pert.at(x, y, {.cross_check = false});
        });
        for (int i = 0; i < batch && static_cast<int>(accepted.size()) < n_samples; ++i) {
            ++v.samples;
            if (!got[i].admissible) {
                ++v.rejected;
                continue;
            }
            accepted.push_back(got[i]);
            if (got_p[i].admissible) pert_abs.push_back(std::abs(*got_p[i].K));
        }
    }
    v.admissible = static_cast<int>(accepted.size());
    std::vector<real> mags;
    for (auto& s : accepted) mags.push_back(std::abs(*s.K));
    v.max_abs_K = *std::max_element(mags.begin(), mags.end());
    std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
    v.median_abs_K = mags[mags.size() / 2];
    v.scale = pert_abs.empty() ? 0 : *std::max_element(pert_abs.begin(), pert_abs.end());
    const real limit = threshold * (v.scale > 0 ? v.scale : 1);
    for (auto& s : accepted) v.above_margin += std::abs(*s.K) > 1e3L * limit;
    if (v.max_abs_K < limit)
        v.verdict = Verdict::Flat;
    else if (v.above_margin >= 3)
        v.verdict = Verdict::NotFlat;
    else
        v.verdict = Verdict::Inconclusive;
    v.records = std::move(accepted);
    return v;
}

LemmaReport lemma_curv_oracle(const std::array<int, 3>& a, const std::array<MultiPoly, 3>& h0,
                              const std::vector<real>& probe_x, real tol) {
    if (a[0] < 0 || a[0] > a[1] || a[1] > a[2]) throw Error(ErrorCode::Domain, "need 0 <= a1 <= a2 <= a3");
    std::array<MultiPoly, 3> h;
    for (int i = 0; i < 3; ++i) h[i] = h0[i].embed(plane_vars()).to_ring(Ring::complex());
    // h_ij = (y^a_j h_j - y^a_i h_i) / y^min(a_i,a_j); its restriction to y = 0 is the lemma's case split
    MultiPoly y = MultiPoly::variable(plane_vars(), 1, Ring::complex());
    auto hij = [&](int i, int j) {
        int m = std::min(a[i], a[j]);
        return y.pow(static_cast<unsigned>(a[j] - m)) * h[j] - y.pow(static_cast<unsigned>(a[i] - m)) * h[i];
    };
    MultiPoly h12 = hij(0, 1), h23 = hij(1, 2), h31 = hij(2, 0);
    auto ev = [](const MultiPoly& p, real x, real y) {
        cplx pt[] = {x, y};
        return p.eval(std::span<const cplx>(pt));
    };

    LemmaReport rep;
    rep.a = a;
    rep.pass = true;
    for (real x0 : probe_x) {
        for (int i = 0; i < 3; ++i) {
            if (std::abs(ev(h[i], x0, 0)) < 1e-12L) throw Error(ErrorCode::Domain, "h_i vanishes on y = 0");
            for (int j = i + 1; j < 3; ++j)
                if (a[i] == a[j] && std::abs(ev(h[i] - h[j], x0, 0)) < 1e-12L)
                    throw Error(ErrorCode::Domain, "h_i - h_j vanishes on y = 0 with a_i = a_j");
        }
        // sample A y^(a1+1) and B y on y = 10^-j and extrapolate the Newton interpolant to y = 0
        const int n = 7;
        std::vector<real> ys;
        std::vector<cplx> fa, fb;
        for (int j = 2; j < 2 + n; ++j) {
            real yv = std::pow(10.0L, -j);
            std::array<FormJet, 3> forms;
            for (int i = 0; i < 3; ++i) {
                real ya = std::pow(yv, a[i]);
                cplx hv = ev(h[i], x0, yv), hx = ev(h[i].derivative(0), x0, yv), hy = ev(h[i].derivative(1), x0, yv);
                cplx ny = (a[i] > 0 ? static_cast<real>(a[i]) * std::pow(yv, a[i] - 1) * hv : cplx(0)) + ya * hy;
                forms[i] = {1, 0, 0, ya * hv, ya * hx, ny};
            }
            Eta e = eta_forms(forms);
            ys.push_back(yv);
            fa.push_back(e.A * std::pow(yv, a[0] + 1));
            fb.push_back(e.B * yv);
        }
        auto taylor01 = [&](std::vector<cplx> d) {
            for (int lvl = 1; lvl < n; ++lvl)
                for (int i = n - 1; i >= lvl; --i) d[i] = (d[i] - d[i - 1]) / (ys[i] - ys[i - lvl]);
            // p(0) and p'(0) from the Newton form
            cplx v = d[n - 1], dv = 0;
            for (int i = n - 2; i >= 0; --i) {
                dv = dv * (0 - ys[i]) + v;
                v = v * (0 - ys[i]) + d[i];
            }
            return std::pair{v, dv};
        };
        auto [lead, next] = taylor01(fa);
        auto [residue, unused] = taylor01(fb);
        (void)unused;

        LemmaProbe pr;
        pr.x = x0;
        pr.lead = lead;
        pr.next = next;
        pr.residue = residue;
        cplx v12 = ev(h12, x0, 0), v23 = ev(h23, x0, 0), v31 = ev(h31, x0, 0);
        cplx d12 = ev(h12.derivative(1), x0, 0), d23 = ev(h23.derivative(1), x0, 0);
        pr.lead_expected = static_cast<real>(a[0] - a[1]) / v31;
        pr.next_expected = (v23 * d12 - v12 * d23) / (v12 * v23 * v31);
        pr.residue_expected = static_cast<real>(a[0]);
        auto close = [tol](cplx got, cplx want) { return std::abs(got - want) <= tol * std::max(real(1), std::abs(want)); };
        // the second coefficient of the lemma only holds when a1 = a2
        pr.next_checked = a[0] == a[1];
        pr.pass = close(pr.lead, pr.lead_expected) && close(pr.residue, pr.residue_expected) &&
                  (!pr.next_checked || close(pr.next, pr.next_expected));
        rep.pass = rep.pass && pr.pass;
        rep.probes.push_back(pr);
    }
    return rep;
}

}  // namespace webcurv
