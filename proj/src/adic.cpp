#include "onm/adic.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace onm {

BlankingRange::BlankingRange(double lower_, double upper_) : lower(lower_), upper(upper_)
{
    if (!(lower <= upper)) {
        throw std::invalid_argument("blanking range needs lower <= upper");
    }
}

double blank(double x, const BlankingRange& range) noexcept
{
    return range.contains(x) ? x : 0.0;
}

BasicAdic::BasicAdic(FenceParams params) : tracker_(params) {}

double BasicAdic::step(double x)
{
    double y = x;
    last_clipped_ = false;
    if (tracker_.ready()) {
        const Fences f = tracker_.fences();
        if (x < f.lower || x > f.upper) {
            y = tracker_.dcl();
            last_clipped_ = true;
            ++clipped_;
        }
    }
    tracker_.update(x);
    return y;
}

Signal BasicAdic::apply(const Signal& x)
{
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = step(x[i]);
    }
    return Signal(std::move(out), x.sample_rate());
}

void AdicParams::validate(double rate) const
{
    if (!(rate > 0.0)) {
        throw std::invalid_argument("sample rate must be positive");
    }
    if (!(tau >= 2.0 / rate)) {
        throw std::invalid_argument("ADiC time constant must be at least two sample periods");
    }
    if (source == FenceSource::external && !(external_lower <= external_upper)) {
        throw std::invalid_argument("external fences need alpha- <= alpha+");
    }
    fences.validate();
}

FeedbackAdic::FeedbackAdic(AdicParams params, double rate)
    : params_((params.validate(rate), std::move(params))), rate_(rate),
      gain_(1.0 / (params_.tau * rate)), tracker_(params_.fences)
{
}

bool FeedbackAdic::active() const noexcept
{
    if (bypass_) {
        return false;
    }
    return params_.source == FenceSource::external || tracker_.ready();
}

Fences FeedbackAdic::current_fences() const noexcept
{
    if (params_.source == FenceSource::external) {
        return {params_.external_lower, params_.external_upper};
    }
    return tracker_.fences();
}

double FeedbackAdic::step(double x)
{
    const double u = x - chi_;
    bool clip = false;
    if (active()) {
        const Fences f = current_fences();
        clip = u < f.lower || u > f.upper;
    }
    double y;
    if (clip) {
        y = chi_;
        ++clipped_;
    } else {
        y = x;
        chi_ += gain_ * u;
    }
    last_clipped_ = clip;
    if (params_.source == FenceSource::self_tracked && n_ >= params_.holdoff) {
        tracker_.update(u);
    }
    ++n_;
    return y;
}

Signal FeedbackAdic::apply(const Signal& x, std::vector<AdicTraceRow>* trace)
{
    if (std::abs(x.sample_rate() - rate_) > 1e-9 * rate_) {
        throw std::invalid_argument("ADiC rate does not match the signal rate");
    }
    std::vector<double> out(x.size());
    if (trace) {
        trace->reserve(trace->size() + x.size());
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (trace) {
            const Fences f = current_fences();
            const double chi = chi_;
            out[i] = step(x[i]);
            trace->push_back({x[i], x[i] - chi, f.lower, f.upper, chi, last_clipped_});
        } else {
            out[i] = step(x[i]);
        }
    }
    return Signal(std::move(out), x.sample_rate());
}

void write_adic_trace_csv(std::ostream& out, const std::vector<AdicTraceRow>& rows)
{
    out << "n,x,u,alpha_minus,alpha_plus,chi,clipped\n";
    char buf[256];
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", i, r.x, r.u,
                      r.lower, r.upper, r.chi, r.clipped ? 1 : 0);
        out << buf;
    }
}

} // namespace onm
