#include "onm/qtf.hpp"

#include "onm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace onm {

QuantileTracker::QuantileTracker(double q, double delta) : q_(q), delta_(delta)
{
    if (!(q > 0.0 && q < 1.0)) {
        throw std::invalid_argument("quantile must lie in (0, 1)");
    }
    if (!(delta > 0.0)) {
        throw std::invalid_argument("tracker step must be positive");
    }
}

void QuantileTracker::initialize(double value) noexcept
{
    estimate_ = value;
    initialized_ = true;
}

void QuantileTracker::set_delta(double delta)
{
    if (!(delta > 0.0)) {
        throw std::invalid_argument("tracker step must be positive");
    }
    delta_ = delta;
}

double QuantileTracker::step(double y) noexcept
{
    if (!initialized_) {
        initialize(y);
        return estimate_;
    }
    const double s = y > estimate_ ? 1.0 : (y < estimate_ ? -1.0 : 0.0);
    estimate_ += delta_ * (s + 2.0 * q_ - 1.0);
    return estimate_;
}

void FenceParams::validate() const
{
    if (!(beta >= 0.0)) {
        throw std::invalid_argument("fence scale beta must be non-negative");
    }
    if (!(weight >= 0.0)) {
        throw std::invalid_argument("trimean weight must be non-negative");
    }
    if (!(step >= 0.0)) {
        throw std::invalid_argument("tracker step must be non-negative (0 = automatic)");
    }
    if (step == 0.0 && calibration_length == 0) {
        throw std::invalid_argument("automatic tracker step needs a calibration length");
    }
    if (!(auto_step_fraction > 0.0)) {
        throw std::invalid_argument("automatic step fraction must be positive");
    }
    if (!(floor >= 0.0)) {
        throw std::invalid_argument("fence floor must be non-negative");
    }
}

Fences tukey_fences(double q1, double q3, double beta) noexcept
{
    const double lo = std::min(q1, q3);
    const double hi = std::max(q1, q3);
    const double iqr = hi - lo;
    return {lo - beta * iqr, hi + beta * iqr};
}

double trimean_level(double q1, double q2, double q3, double weight) noexcept
{
    const double level = (q1 + weight * q2 + q3) / (weight + 2.0);
    return std::clamp(level, std::min(q1, q3), std::max(q1, q3));
}

namespace {

double placeholder_step(const FenceParams& p)
{
    return p.step > 0.0 ? p.step : 1.0;
}

} // namespace

FenceTracker::FenceTracker(FenceParams params)
    : params_((params.validate(), params)),
      q1_(0.25, placeholder_step(params_)),
      q2_(0.5, placeholder_step(params_)),
      q3_(0.75, placeholder_step(params_))
{
    buffer_.reserve(params_.calibration_length);
}

void FenceTracker::start()
{
    double delta = params_.step;
    if (delta == 0.0) {
        const double iqr = exact_quantile(buffer_, 0.75) - exact_quantile(buffer_, 0.25);
        const auto [mn, mx] = std::minmax_element(buffer_.begin(), buffer_.end());
        const double range = *mx - *mn;
        const double peak = std::max(std::abs(*mn), std::abs(*mx));
        double scale = iqr > 0.0 ? iqr : (range > 0.0 ? range : peak);
        delta = params_.auto_step_fraction * scale;
        if (!(delta > 0.0)) {
            delta = std::numeric_limits<double>::min();
        }
    }
    for (auto* t : {&q1_, &q2_, &q3_}) {
        t->set_delta(delta);
        t->initialize(exact_quantile(buffer_, t->q()));
    }
    for (std::size_t i = 0; i < buffer_.size(); ++i) {
        q1_.step(buffer_[i]);
        q2_.step(buffer_[i]);
        q3_.step(buffer_[i]);
    }
    buffer_.clear();
    buffer_.shrink_to_fit();
    ready_ = true;
}

void FenceTracker::update(double y)
{
    ++count_;
    if (ready_) {
        q1_.step(y);
        q2_.step(y);
        q3_.step(y);
        return;
    }
    buffer_.push_back(y);
    if (buffer_.size() == 1) {
        q1_.initialize(y);
        q2_.initialize(y);
        q3_.initialize(y);
    }
    if (buffer_.size() >= std::max<std::size_t>(params_.calibration_length, 1)) {
        start();
    }
}

Fences FenceTracker::fences() const noexcept
{
    Fences f = tukey_fences(q1(), q3(), params_.beta);
    if (params_.floor > 0.0) {
        const double m = dcl();
        f.lower = std::min(f.lower, m - params_.floor);
        f.upper = std::max(f.upper, m + params_.floor);
    }
    return f;
}

double FenceTracker::dcl() const noexcept
{
    return trimean_level(q1(), q2(), q3(), params_.weight);
}

void FenceTracker::set_floor(double floor)
{
    if (!(floor >= 0.0)) {
        throw std::invalid_argument("fence floor must be non-negative");
    }
    params_.floor = floor;
}

void write_fence_trace_csv(std::ostream& out, const std::vector<FenceTraceRow>& rows)
{
    out << "n,q1,q2,q3,alpha_minus,alpha_plus,dcl\n";
    char buf[256];
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, r.q1, r.q2,
                      r.q3, r.lower, r.upper, r.dcl);
        out << buf;
    }
}

} // namespace onm
