#include "bergman/gram.hpp"

#include <json.hpp>

#include <sstream>
#include <utility>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

struct NodeSet {
    long n = 0;
    std::vector<Cx> z;       // psi(e^{i theta_m}) - z_c
    std::vector<Cx> weight;  // psi'(w) w / N, so (2 pi i)^-1 \oint f dz = sum f * weight
};

NodeSet make_nodes(const JordanDomain& d, long n, const Cx& center) {
    NodeSet ns;
    ns.n = n;
    ns.z.reserve(n);
    ns.weight.reserve(n);
    Real two_pi = 2 * pi();
    Real inv_n = Real(1) / n;
    for (long m = 0; m < n; ++m) {
        Cx w = polar(Real(1), two_pi * m / n);
        ns.z.push_back(psi_eval(d, w) - center);
        ns.weight.push_back(psi_prime(d, w) * w * inv_n);
    }
    return ns;
}

/// Raw (un-Hermitized) moment matrix at a fixed node count.
std::vector<std::vector<Cx>> raw_moments(const JordanDomain& d, int n_max,
                                         long nodes, const Cx& center) {
    NodeSet ns = make_nodes(d, nodes, center);
    std::vector<std::vector<Cx>> acc(
        n_max + 1, std::vector<Cx>(n_max + 1, Cx(0.0, 0.0)));
    std::vector<Cx> zp(n_max + 1), zbw(n_max + 2);
    for (long m = 0; m < ns.n; ++m) {
        const Cx& z = ns.z[m];
        Cx zb = conj(z);
        zp[0] = Cx(1.0, 0.0);
        for (int j = 1; j <= n_max; ++j) zp[j] = zp[j - 1] * z;
        zbw[0] = ns.weight[m];
        for (int k = 1; k <= n_max + 1; ++k) zbw[k] = zbw[k - 1] * zb;
        for (int j = 0; j <= n_max; ++j) {
            const Cx& a = zp[j];
            auto& row = acc[j];
            for (int k = 0; k <= n_max; ++k) row[k] += a * zbw[k + 1];
        }
    }
    for (int j = 0; j <= n_max; ++j)
        for (int k = 0; k <= n_max; ++k) acc[j][k] /= Real(k + 1);
    return acc;
}

/// Node count at which the hardest single entry (highest total degree) is
/// stable, from a cheap scalar doubling ladder.
long estimate_nodes(const JordanDomain& d, int n_max, const Cx& center,
                    const Real& tol, long max_nodes) {
    long n = 64;
    Cx prev;
    bool have_prev = false;
    while (n <= max_nodes) {
        NodeSet ns = make_nodes(d, n, center);
        Cx s(0.0, 0.0);
        for (long m = 0; m < ns.n; ++m)
            s += pow_i(ns.z[m], n_max) * pow_i(conj(ns.z[m]), n_max + 1) *
                 ns.weight[m];
        if (have_prev && abs(s - prev) <= tol * (1 + abs(s))) return n;
        prev = s;
        have_prev = true;
        n *= 2;
    }
    return max_nodes;
}

Real max_entry_delta(const std::vector<std::vector<Cx>>& a,
                     const std::vector<std::vector<Cx>>& b) {
    Real worst(0);
    for (size_t j = 0; j < a.size(); ++j)
        for (size_t k = 0; k < a.size(); ++k) {
            Real delta = abs(a[j][k] - b[j][k]) / (1 + abs(b[j][k]));
            if (delta > worst) worst = delta;
        }
    return worst;
}

}  // namespace

MomentMatrix compute_moments(const JordanDomain& d, int n_max,
                             const PrecisionConfig& cfg) {
    if (n_max < 0) throw ConfigError("compute_moments: n_max must be >= 0");
    ScopedPrecision prec(cfg.precision_bits);
    Real tol = cfg.quad_tol();
    Cx center = d.derived().center;

    long n = estimate_nodes(d, n_max, center, tol, cfg.max_quad_nodes);
    auto cur = raw_moments(d, n_max, n, center);
    Real worst(-1);
    while (2 * n <= cfg.max_quad_nodes) {
        auto next = raw_moments(d, n_max, 2 * n, center);
        worst = max_entry_delta(cur, next);
        cur = std::move(next);
        n *= 2;
        if (worst <= tol) break;
    }
    if (worst < 0 || worst > tol)
        throw QuadratureError(
            "compute_moments: node budget exhausted before convergence",
            worst < 0 ? 1.0 : static_cast<double>(worst));

    MomentMatrix m;
    m.n_max = n_max;
    m.quad_nodes = n;
    m.center = center;
    m.entries.assign(n_max + 1, std::vector<Cx>(n_max + 1));
    for (int j = 0; j <= n_max; ++j)
        for (int k = 0; k <= n_max; ++k)
            m.entries[j][k] = (cur[j][k] + conj(cur[k][j])) * Real(0.5);
    if (!(m.entries[0][0].re > 0))
        throw QuadratureError("compute_moments: nonpositive area", 1.0);
    return m;
}

OrthoBasis orthonormal_basis_cholesky(const JordanDomain& d,
                                      const MomentMatrix& m) {
    int n = m.n_max;
    int bits = precision_bits();

    // rescale by the diagonal to tame the exponential condition growth
    std::vector<Real> scale(n + 1);
    for (int k = 0; k <= n; ++k) {
        if (!(m.entries[k][k].re > 0))
            throw IllConditionedError("nonpositive diagonal moment", k);
        scale[k] = sqrt(m.entries[k][k].re);
    }
    std::vector<std::vector<Cx>> a(n + 1, std::vector<Cx>(n + 1));
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k)
            a[j][k] = m.entries[j][k] / (scale[j] * scale[k]);

    // lower Cholesky a = L L^H; pivots of the rescaled matrix start at 1,
    // so a pivot below 2^-(bits/2) has lost half its significand
    Real pivot_floor = pow2(-bits / 2);
    std::vector<std::vector<Cx>> l(n + 1, std::vector<Cx>(n + 1, Cx(0.0, 0.0)));
    for (int k = 0; k <= n; ++k) {
        Real diag = a[k][k].re;
        for (int i = 0; i < k; ++i) diag -= norm2(l[k][i]);
        if (!(diag > 0))
            throw IllConditionedError(
                "Cholesky pivot nonpositive; raise precision_bits", k);
        if (diag < pivot_floor)
            throw IllConditionedError(
                "Cholesky pivot lost half its significand; raise precision_bits",
                k);
        l[k][k] = Cx(sqrt(diag), Real(0));
        for (int r = k + 1; r <= n; ++r) {
            Cx s = a[r][k];
            for (int i = 0; i < k; ++i) s -= l[r][i] * conj(l[k][i]);
            l[r][k] = s / l[k][k].re;
        }
    }

    // rows of L^-1 are the polynomials in the rescaled centered monomials
    OrthoBasis b;
    b.domain = d;
    b.n_max = n;
    b.precision_bits = bits;
    b.quad_nodes = m.quad_nodes;
    b.coeffs.resize(n + 1);
    std::vector<std::vector<Cx>> c(n + 1);
    for (int r = 0; r <= n; ++r) {
        c[r].assign(r + 1, Cx(0.0, 0.0));
        for (int k = r; k >= 0; --k) {
            Cx s = (k == r) ? Cx(1.0, 0.0) : Cx(0.0, 0.0);
            for (int i = k; i < r; ++i) s -= l[r][i] * c[i][k];
            c[r][k] = s / l[r][r].re;
        }
        Poly q(r + 1);
        for (int k = 0; k <= r; ++k) q[k] = c[r][k] / scale[k];
        // un-shift from (z - z_c) monomials back to raw z monomials
        b.coeffs[r] = poly_shift(q, -m.center);
    }
    return b;
}

OrthoBasis orthonormal_basis_arnoldi(const JordanDomain& d, int n_max,
                                     const PrecisionConfig& cfg) {
    ScopedPrecision prec(cfg.precision_bits);
    Real tol = cfg.quad_tol();
    Cx center = d.derived().center;
    long nodes =
        2 * estimate_nodes(d, n_max, center, tol, cfg.max_quad_nodes / 2);
    NodeSet ns = make_nodes(d, nodes, center);
    long nn = ns.n;

    // conj(antiderivative values) * weight per basis member, so that
    // <f, q_j> = sum_m f(z_m) * aw[j][m]
    std::vector<std::vector<Cx>> vals(n_max + 1), aw(n_max + 1);
    std::vector<Poly> q(n_max + 1);

    auto store = [&](int j, const Poly& coeffs, const std::vector<Cx>& v) {
        q[j] = coeffs;
        vals[j] = v;
        Poly anti = poly_antiderivative(coeffs);
        aw[j].resize(nn);
        for (long m = 0; m < nn; ++m)
            aw[j][m] = conj(poly_eval(anti, ns.z[m])) * ns.weight[m];
    };
    auto inner_self = [&](const Poly& coeffs,
                          const std::vector<Cx>& v) -> Real {
        Poly anti = poly_antiderivative(coeffs);
        Cx s(0.0, 0.0);
        for (long m = 0; m < nn; ++m)
            s += v[m] * conj(poly_eval(anti, ns.z[m])) * ns.weight[m];
        return s.re;
    };

    {
        Poly one = {Cx(1.0, 0.0)};
        std::vector<Cx> v(nn, Cx(1.0, 0.0));
        Real n2 = inner_self(one, v);
        if (!(n2 > 0)) throw IllConditionedError("nonpositive norm", 0);
        Real inv_norm = 1 / sqrt(n2);
        one[0] *= inv_norm;
        for (auto& x : v) x *= inv_norm;
        store(0, one, v);
    }

    for (int n = 1; n <= n_max; ++n) {
        Poly t(n + 1, Cx(0.0, 0.0));
        for (int k = 0; k < n; ++k) t[k + 1] = q[n - 1][k];
        std::vector<Cx> tv(nn);
        for (long m = 0; m < nn; ++m) tv[m] = ns.z[m] * vals[n - 1][m];

        for (int pass = 0; pass < 2; ++pass) {  // MGS with reorthogonalization
            for (int j = 0; j < n; ++j) {
                Cx c(0.0, 0.0);
                for (long m = 0; m < nn; ++m) c += tv[m] * aw[j][m];
                for (size_t k = 0; k < q[j].size(); ++k) t[k] -= c * q[j][k];
                for (long m = 0; m < nn; ++m) tv[m] -= c * vals[j][m];
            }
        }
        Real n2 = inner_self(t, tv);
        if (!(n2 > 0))
            throw IllConditionedError(
                "Stieltjes step produced nonpositive norm; raise precision_bits",
                n);
        Real inv_norm = 1 / sqrt(n2);
        // normalize the leading coefficient to be real positive
        Cx lead = t[n] * inv_norm;
        if (abs(lead) == 0)
            throw IllConditionedError("Stieltjes leading coefficient vanished", n);
        Cx phase = Cx(abs(lead), Real(0)) / lead;
        Cx f = phase * inv_norm;
        for (auto& ck : t) ck *= f;
        for (auto& x : tv) x *= f;
        store(n, t, tv);
    }

    OrthoBasis b;
    b.domain = d;
    b.n_max = n_max;
    b.precision_bits = cfg.precision_bits;
    b.quad_nodes = nn;
    b.coeffs.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) b.coeffs[n] = poly_shift(q[n], -center);
    return b;
}

OrthoBasis compute_basis(const JordanDomain& d, int n_max,
                         const PrecisionConfig& cfg, bool cross_check) {
    PrecisionConfig run = cfg;
    const int max_escalations = 4;
    for (int attempt = 0;; ++attempt) {
        try {
            ScopedPrecision prec(run.precision_bits);
            MomentMatrix m = compute_moments(d, n_max, run);
            OrthoBasis b = orthonormal_basis_cholesky(d, m);
            if (cross_check) {
                OrthoBasis b2 = orthonormal_basis_arnoldi(d, n_max, run);
                Real tol = run.ortho_tol();
                for (int n = 0; n <= n_max; ++n) {
                    Real norm = poly_coeff_norm(b.coeffs[n]);
                    for (int k = 0; k <= n; ++k) {
                        Real delta = abs(b.coeffs[n][k] - b2.coeffs[n][k]);
                        if (delta > tol * (1 + norm))
                            throw CrossCheckError(
                                "Cholesky and Stieltjes bases disagree at degree " +
                                std::to_string(n));
                    }
                }
            }
            return b;
        } catch (const IllConditionedError&) {
            if (attempt >= max_escalations) throw;
            run.precision_bits *= 2;
        }
    }
}

Cx eval_poly(const OrthoBasis& b, int n, const Cx& z) {
    if (n < 0 || n > b.n_max)
        throw ConfigError("eval_poly: degree out of range");
    return poly_eval(b.coeffs[n], z);
}

Real gram_residual(const OrthoBasis& b) {
    ScopedPrecision prec(b.precision_bits);
    long nodes = 2 * (b.quad_nodes > 0 ? b.quad_nodes : 1024);
    // raw z monomials here, so center the node set at 0
    NodeSet ns = make_nodes(b.domain, nodes, Cx(0.0, 0.0));
    int n = b.n_max;
    std::vector<std::vector<Cx>> vals(n + 1), aw(n + 1);
    for (int j = 0; j <= n; ++j) {
        vals[j].resize(ns.n);
        aw[j].resize(ns.n);
        Poly anti = poly_antiderivative(b.coeffs[j]);
        for (long m = 0; m < ns.n; ++m) {
            vals[j][m] = poly_eval(b.coeffs[j], ns.z[m]);
            aw[j][m] = conj(poly_eval(anti, ns.z[m])) * ns.weight[m];
        }
    }
    Real worst(0);
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k) {
            Cx s(0.0, 0.0);
            for (long m = 0; m < ns.n; ++m) s += vals[j][m] * aw[k][m];
            Real delta = abs(s - (j == k ? Cx(1.0, 0.0) : Cx(0.0, 0.0)));
            if (delta > worst) worst = delta;
        }
    return worst;
}

std::string basis_to_json(const OrthoBasis& b) {
    ScopedPrecision prec(b.precision_bits);
    nlohmann::json j;
    j["family"] = family_name(b.domain.family());
    j["params"] = nlohmann::json::object();
    for (const auto& [k, v] : b.domain.params()) j["params"][k] = v;
    j["precision_bits"] = b.precision_bits;
    auto arr = nlohmann::json::array();
    for (const auto& p : b.coeffs) {
        auto row = nlohmann::json::array();
        for (const auto& c : p)
            row.push_back({to_string(c.re), to_string(c.im)});
        arr.push_back(std::move(row));
    }
    j["coeffs"] = std::move(arr);
    return j.dump();
}

OrthoBasis basis_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    OrthoBasis b;
    std::map<std::string, double> params;
    for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
        params[it.key()] = it.value().get<double>();
    b.domain = JordanDomain::from_params(
        family_from_name(j.at("family").get<std::string>()), params);
    b.precision_bits = j.at("precision_bits").get<int>();
    ScopedPrecision prec(b.precision_bits);
    for (const auto& row : j.at("coeffs")) {
        Poly p;
        for (const auto& pair : row)
            p.emplace_back(real_from_string(pair.at(0).get<std::string>()),
                           real_from_string(pair.at(1).get<std::string>()));
        b.coeffs.push_back(std::move(p));
    }
    if (b.coeffs.empty()) throw ConfigError("basis JSON has no coefficients");
    b.n_max = static_cast<int>(b.coeffs.size()) - 1;
    for (int n = 0; n <= b.n_max; ++n)
        if (b.coeffs[n].size() != static_cast<size_t>(n) + 1)
            throw ConfigError("basis JSON: wrong coefficient count at degree " +
                              std::to_string(n));
    return b;
}

std::string basis_to_csv(const OrthoBasis& b) {
    ScopedPrecision prec(b.precision_bits);
    std::ostringstream os;
    os << "n,k,re,im\n";
    for (int n = 0; n <= b.n_max; ++n)
        for (int k = 0; k <= n; ++k)
            os << n << ',' << k << ',' << to_string(b.coeffs[n][k].re) << ','
               << to_string(b.coeffs[n][k].im) << '\n';
    return os.str();
}

}  // namespace bergman
