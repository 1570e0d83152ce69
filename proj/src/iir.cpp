#include "onm/iir.hpp"

#include "onm/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace onm {

using cplx = std::complex<double>;

namespace {

constexpr double pi = std::numbers::pi;

// Reverse Bessel polynomial coefficients, a[k] multiplies s^k.
std::vector<double> reverse_bessel_coefficients(int n)
{
    std::vector<double> a(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        // (2n-k)! / (2^(n-k) k! (n-k)!)
        double v = std::tgamma(2.0 * n - k + 1) / (std::pow(2.0, n - k) * std::tgamma(k + 1.0)
                                                   * std::tgamma(n - k + 1.0));
        a[static_cast<std::size_t>(k)] = v;
    }
    return a;
}

std::vector<cplx> polynomial_roots(const std::vector<double>& coeffs)
{
    // coeffs[k] multiplies s^k; companion matrix of the monic polynomial.
    const int n = static_cast<int>(coeffs.size()) - 1;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    const double lead = coeffs.back();
    for (int i = 0; i < n; ++i) {
        companion(0, i) = -coeffs[static_cast<std::size_t>(n - 1 - i)] / lead;
    }
    for (int i = 1; i < n; ++i) {
        companion(i, i - 1) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    std::vector<cplx> roots;
    for (int i = 0; i < n; ++i) {
        cplx r = solver.eigenvalues()[i];
        // Newton polish against the original polynomial.
        for (int it = 0; it < 8; ++it) {
            cplx p = 0.0, dp = 0.0;
            for (int k = n; k >= 0; --k) {
                dp = dp * r + p;
                p = p * r + coeffs[static_cast<std::size_t>(k)];
            }
            if (std::abs(dp) == 0.0) {
                break;
            }
            r -= p / dp;
        }
        roots.push_back(r);
    }
    return roots;
}

// |H(jw)|^2 for an all-pole analog prototype with unit DC gain.
double allpole_magnitude_sq(const std::vector<cplx>& poles, double w)
{
    cplx num = 1.0, den = 1.0;
    for (const auto& p : poles) {
        num *= -p;
        den *= cplx(0.0, w) - p;
    }
    return std::norm(num / den);
}

double prewarp(double f, double rate)
{
    return 2.0 * rate * std::tan(pi * f / rate);
}

cplx bilinear(cplx s, double rate)
{
    const double k = 2.0 * rate;
    return (k + s) / (k - s);
}

struct DigitalZpk {
    std::vector<cplx> poles;
};

// Groups digital poles into conjugate pairs and leftover reals.
std::vector<std::vector<cplx>> group_poles(std::vector<cplx> poles)
{
    constexpr double tol = 1e-9;
    std::vector<cplx> complex_upper;
    std::vector<double> reals;
    for (const auto& p : poles) {
        if (std::abs(p.imag()) <= tol * std::max(1.0, std::abs(p))) {
            reals.push_back(p.real());
        } else if (p.imag() > 0.0) {
            complex_upper.push_back(p);
        }
    }
    std::vector<std::vector<cplx>> groups;
    // Order by radius so the most resonant pairs come last.
    std::sort(complex_upper.begin(), complex_upper.end(),
              [](const cplx& a, const cplx& b) { return std::abs(a) < std::abs(b); });
    std::sort(reals.begin(), reals.end(),
              [](double a, double b) { return std::abs(a) < std::abs(b); });
    std::size_t i = 0;
    for (; i + 1 < reals.size(); i += 2) {
        groups.push_back({reals[i], reals[i + 1]});
    }
    if (i < reals.size()) {
        groups.push_back({reals[i]});
    }
    for (const auto& p : complex_upper) {
        groups.push_back({p, std::conj(p)});
    }
    return groups;
}

Biquad section_from(const std::vector<cplx>& poles, FilterKind kind, double notch_omega)
{
    Biquad s;
    if (poles.size() == 1) {
        s.a1 = -poles[0].real();
        s.a2 = 0.0;
        if (kind == FilterKind::highpass) {
            s.b0 = 1.0;
            s.b1 = -1.0;
        } else {
            s.b0 = 1.0;
            s.b1 = 1.0;
        }
        s.b2 = 0.0;
        return s;
    }
    const cplx sum = poles[0] + poles[1];
    const cplx prod = poles[0] * poles[1];
    s.a1 = -sum.real();
    s.a2 = prod.real();
    switch (kind) {
    case FilterKind::lowpass:
        s.b0 = 1.0; s.b1 = 2.0; s.b2 = 1.0;
        break;
    case FilterKind::highpass:
        s.b0 = 1.0; s.b1 = -2.0; s.b2 = 1.0;
        break;
    case FilterKind::bandpass:
        s.b0 = 1.0; s.b1 = 0.0; s.b2 = -1.0;
        break;
    case FilterKind::bandstop:
        s.b0 = 1.0; s.b1 = -2.0 * std::cos(notch_omega); s.b2 = 1.0;
        break;
    }
    return s;
}

void normalize_gain(Biquad& s, double omega)
{
    const double g = std::abs(s.response(omega));
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw DesignError("section has zero gain at the normalization frequency");
    }
    s.b0 /= g;
    s.b1 /= g;
    s.b2 /= g;
}

void check_stable(const IirDesign& d)
{
    for (const auto& p : d.poles()) {
        if (!(std::abs(p) < 1.0)) {
            throw DesignError("designed filter is unstable (pole radius "
                              + std::to_string(std::abs(p)) + ")");
        }
    }
}

} // namespace

const char* to_string(IirFamily family) noexcept
{
    switch (family) {
    case IirFamily::butterworth: return "butterworth";
    case IirFamily::bessel: return "bessel";
    case IirFamily::custom: return "custom";
    }
    return "custom";
}

const char* to_string(FilterKind kind) noexcept
{
    switch (kind) {
    case FilterKind::lowpass: return "lowpass";
    case FilterKind::highpass: return "highpass";
    case FilterKind::bandpass: return "bandpass";
    case FilterKind::bandstop: return "bandstop";
    }
    return "lowpass";
}

IirFamily parse_iir_family(const std::string& name)
{
    if (name == "butterworth") return IirFamily::butterworth;
    if (name == "bessel") return IirFamily::bessel;
    if (name == "custom") return IirFamily::custom;
    throw std::invalid_argument("unknown filter family '" + name + "'");
}

FilterKind parse_filter_kind(const std::string& name)
{
    if (name == "lowpass") return FilterKind::lowpass;
    if (name == "highpass") return FilterKind::highpass;
    if (name == "bandpass") return FilterKind::bandpass;
    if (name == "bandstop") return FilterKind::bandstop;
    throw std::invalid_argument("unknown filter kind '" + name + "'");
}

cplx Biquad::response(double omega) const noexcept
{
    const cplx z1 = std::polar(1.0, -omega);
    const cplx z2 = z1 * z1;
    return (b0 + b1 * z1 + b2 * z2) / (1.0 + a1 * z1 + a2 * z2);
}

double Biquad::group_delay(double omega) const noexcept
{
    auto delay_of = [omega](double c0, double c1, double c2) {
        const cplx z1 = std::polar(1.0, -omega);
        const cplx z2 = z1 * z1;
        const cplx p = c0 + c1 * z1 + c2 * z2;
        const cplx dp = c1 * z1 + 2.0 * c2 * z2;
        return (dp / p).real();
    };
    return delay_of(b0, b1, b2) - delay_of(1.0, a1, a2);
}

std::vector<cplx> Biquad::poles() const
{
    if (a2 == 0.0) {
        return {cplx(-a1, 0.0)};
    }
    const cplx disc = std::sqrt(cplx(a1 * a1 - 4.0 * a2, 0.0));
    return {(-a1 + disc) / 2.0, (-a1 - disc) / 2.0};
}

cplx IirDesign::response(double frequency_hz) const noexcept
{
    const double omega = 2.0 * pi * frequency_hz / rate;
    cplx h = 1.0;
    for (const auto& s : sections) {
        h *= s.response(omega);
    }
    return h;
}

double IirDesign::magnitude_db(double frequency_hz) const noexcept
{
    return 20.0 * std::log10(magnitude(frequency_hz));
}

double IirDesign::group_delay(double frequency_hz) const noexcept
{
    const double omega = 2.0 * pi * frequency_hz / rate;
    double d = 0.0;
    for (const auto& s : sections) {
        d += s.group_delay(omega);
    }
    return d / rate;
}

std::vector<cplx> IirDesign::poles() const
{
    std::vector<cplx> out;
    for (const auto& s : sections) {
        auto p = s.poles();
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

bool IirDesign::is_stable() const
{
    const auto p = poles();
    return std::all_of(p.begin(), p.end(), [](const cplx& z) { return std::abs(z) < 1.0; });
}

std::vector<cplx> butterworth_prototype_poles(int order)
{
    if (order < 1) {
        throw std::invalid_argument("filter order must be positive");
    }
    std::vector<cplx> poles;
    for (int k = 0; k < order; ++k) {
        poles.push_back(std::polar(1.0, pi * (2.0 * k + order + 1) / (2.0 * order)));
    }
    return poles;
}

std::vector<cplx> bessel_prototype_poles(int order)
{
    if (order < 1) {
        throw std::invalid_argument("filter order must be positive");
    }
    auto poles = polynomial_roots(reverse_bessel_coefficients(order));
    // Rescale so |H(j1)|^2 = 1/2.
    double lo = 1e-3, hi = 1e3;
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (allpole_magnitude_sq(poles, mid) > 0.5) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double w3 = std::sqrt(lo * hi);
    for (auto& p : poles) {
        p /= w3;
    }
    return poles;
}

IirDesign lowpass_from_prototype(std::span<const cplx> prototype_poles, double cutoff,
                                 double rate, IirFamily family, std::string label)
{
    if (!(rate > 0.0)) {
        throw std::invalid_argument("sample rate must be positive");
    }
    if (!(cutoff > 0.0 && cutoff < rate / 2.0)) {
        throw std::invalid_argument("cutoff must lie in (0, rate/2)");
    }
    const double wc = prewarp(cutoff, rate);
    std::vector<cplx> digital;
    for (const auto& p : prototype_poles) {
        digital.push_back(bilinear(p * wc, rate));
    }
    IirDesign d;
    d.family = family;
    d.kind = FilterKind::lowpass;
    d.order = static_cast<int>(prototype_poles.size());
    d.cutoffs = {cutoff};
    d.rate = rate;
    d.label = std::move(label);
    for (const auto& g : group_poles(digital)) {
        Biquad s = section_from(g, FilterKind::lowpass, 0.0);
        normalize_gain(s, 0.0);
        d.sections.push_back(s);
    }
    check_stable(d);
    return d;
}

IirDesign design_iir(IirFamily family, FilterKind kind, int order, std::vector<double> cutoffs,
                     double rate)
{
    if (order < 1 || order > 8) {
        throw std::invalid_argument("filter order must be in [1, 8]");
    }
    if (!(rate > 0.0)) {
        throw std::invalid_argument("sample rate must be positive");
    }
    const bool band = kind == FilterKind::bandpass || kind == FilterKind::bandstop;
    if (cutoffs.size() != (band ? 2u : 1u)) {
        throw std::invalid_argument(band ? "band filters need two cutoffs"
                                         : "low/highpass filters need one cutoff");
    }
    for (double f : cutoffs) {
        if (!(f > 0.0 && f < rate / 2.0)) {
            throw std::invalid_argument("cutoff must lie in (0, rate/2)");
        }
    }
    if (band && !(cutoffs[0] < cutoffs[1])) {
        throw std::invalid_argument("band edges must be increasing");
    }

    std::vector<cplx> proto;
    switch (family) {
    case IirFamily::butterworth: proto = butterworth_prototype_poles(order); break;
    case IirFamily::bessel: proto = bessel_prototype_poles(order); break;
    case IirFamily::custom: throw std::invalid_argument("custom family cannot be designed");
    }

    std::vector<cplx> analog;
    double notch_omega = 0.0;
    double norm_omega = 0.0;
    switch (kind) {
    case FilterKind::lowpass: {
        const double wc = prewarp(cutoffs[0], rate);
        for (const auto& p : proto) analog.push_back(p * wc);
        norm_omega = 0.0;
        break;
    }
    case FilterKind::highpass: {
        const double wc = prewarp(cutoffs[0], rate);
        for (const auto& p : proto) analog.push_back(wc / p);
        norm_omega = pi;
        break;
    }
    case FilterKind::bandpass:
    case FilterKind::bandstop: {
        const double w1 = prewarp(cutoffs[0], rate);
        const double w2 = prewarp(cutoffs[1], rate);
        const double w0 = std::sqrt(w1 * w2);
        const double bw = w2 - w1;
        for (const auto& p : proto) {
            const cplx half = kind == FilterKind::bandpass ? p * bw / 2.0 : bw / (2.0 * p);
            const cplx root = std::sqrt(half * half - w0 * w0);
            analog.push_back(half + root);
            analog.push_back(half - root);
        }
        // Digital frequency of the analog geometric center.
        const double omega0 = 2.0 * std::atan(w0 / (2.0 * rate));
        notch_omega = omega0;
        norm_omega = kind == FilterKind::bandpass ? omega0 : 0.0;
        break;
    }
    }

    std::vector<cplx> digital;
    for (const auto& s : analog) {
        digital.push_back(bilinear(s, rate));
    }

    IirDesign d;
    d.family = family;
    d.kind = kind;
    d.order = order;
    d.cutoffs = std::move(cutoffs);
    d.rate = rate;
    for (const auto& g : group_poles(digital)) {
        Biquad s = section_from(g, kind, notch_omega);
        normalize_gain(s, norm_omega);
        d.sections.push_back(s);
    }
    check_stable(d);
    return d;
}

IirDesign cascade(const std::vector<IirDesign>& designs)
{
    if (designs.empty()) {
        throw std::invalid_argument("cascade of zero designs");
    }
    IirDesign out = designs.front();
    out.family = IirFamily::custom;
    out.label = "cascade";
    for (std::size_t i = 1; i < designs.size(); ++i) {
        if (designs[i].rate != out.rate) {
            throw std::invalid_argument("cascaded designs must share a sample rate");
        }
        out.order += designs[i].order;
        out.sections.insert(out.sections.end(), designs[i].sections.begin(),
                            designs[i].sections.end());
    }
    return out;
}

void require_rate(double design_rate, double signal_rate, const char* what)
{
    if (std::abs(design_rate - signal_rate) > 1e-9 * std::max(design_rate, signal_rate)) {
        throw std::invalid_argument(std::string(what) + ": designed for "
                                    + std::to_string(design_rate) + " Hz, signal is "
                                    + std::to_string(signal_rate) + " Hz");
    }
}

IirFilter::IirFilter(IirDesign design)
    : design_(std::move(design)), s1_(design_.sections.size(), 0.0),
      s2_(design_.sections.size(), 0.0)
{
}

double IirFilter::process(double x) noexcept
{
    double v = x;
    for (std::size_t i = 0; i < design_.sections.size(); ++i) {
        const Biquad& s = design_.sections[i];
        const double y = s.b0 * v + s1_[i];
        s1_[i] = s.b1 * v - s.a1 * y + s2_[i];
        s2_[i] = s.b2 * v - s.a2 * y;
        v = y;
    }
    return v;
}

void IirFilter::process(std::span<const double> in, std::span<double> out) noexcept
{
    for (std::size_t n = 0; n < in.size(); ++n) {
        out[n] = process(in[n]);
    }
}

Signal IirFilter::apply(const Signal& x)
{
    require_rate(design_.rate, x.sample_rate(), "IIR filter");
    std::vector<double> out(x.size());
    process(x.samples(), out);
    return Signal(std::move(out), x.sample_rate());
}

void IirFilter::reset() noexcept
{
    std::fill(s1_.begin(), s1_.end(), 0.0);
    std::fill(s2_.begin(), s2_.end(), 0.0);
}

} // namespace onm
