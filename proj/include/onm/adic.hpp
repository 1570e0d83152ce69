#pragma once

#include "onm/qtf.hpp"
#include "onm/signal.hpp"

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

namespace onm {

/// Inclusive amplitude range [lower, upper].
struct BlankingRange {
    double lower;
    double upper;

    /// Throws std::invalid_argument if lower > upper.
    BlankingRange(double lower, double upper);
    bool contains(double x) const noexcept { return x >= lower && x <= upper; }
};

/// x inside the range, 0 outside.
double blank(double x, const BlankingRange& range) noexcept;

/// Fence-and-replace clipper: fences and DCL are tracked on the input itself,
/// out-of-range samples are replaced by the DCL. Passes everything through
/// until the tracker has calibrated.
class BasicAdic {
public:
    explicit BasicAdic(FenceParams params = {});

    double step(double x);
    Signal apply(const Signal& x);

    bool last_clipped() const noexcept { return last_clipped_; }
    std::size_t clipped_count() const noexcept { return clipped_; }
    const FenceTracker& tracker() const noexcept { return tracker_; }

private:
    FenceTracker tracker_;
    bool last_clipped_ = false;
    std::size_t clipped_ = 0;
};

enum class FenceSource { self_tracked, external };

struct AdicParams {
    double tau = 0.0;  // seconds
    FenceParams fences;
    FenceSource source = FenceSource::self_tracked;
    double external_lower = -std::numeric_limits<double>::infinity();
    double external_upper = std::numeric_limits<double>::infinity();
    /// Initial samples passed through before the fence tracker sees data.
    std::size_t holdoff = 0;

    /// Throws std::invalid_argument; tau must be at least two sample periods.
    void validate(double rate) const;
};

struct AdicTraceRow {
    double x, u, lower, upper, chi;
    bool clipped;
};

/// Feedback clipper. Per sample, with u = x - chi:
///   u inside the fences:  y = x,   chi += (dt / tau) * u
///   u outside the fences: y = chi, chi unchanged
/// then the fence tracker observes u. No clipping happens before the tracker
/// is ready.
class FeedbackAdic {
public:
    FeedbackAdic(AdicParams params, double rate);

    double step(double x);
    Signal apply(const Signal& x, std::vector<AdicTraceRow>* trace = nullptr);

    double chi() const noexcept { return chi_; }
    bool last_clipped() const noexcept { return last_clipped_; }
    /// Clipping can occur (warm-up finished, not bypassed).
    bool active() const noexcept;
    Fences current_fences() const noexcept;

    std::size_t processed() const noexcept { return n_; }
    std::size_t clipped_count() const noexcept { return clipped_; }

    void set_bypass(bool bypass) noexcept { bypass_ = bypass; }
    bool bypassed() const noexcept { return bypass_; }
    void set_fence_floor(double floor) { tracker_.set_floor(floor); }

    const FenceTracker& tracker() const noexcept { return tracker_; }
    const AdicParams& params() const noexcept { return params_; }
    double rate() const noexcept { return rate_; }

private:
    AdicParams params_;
    double rate_;
    double gain_;
    FenceTracker tracker_;
    double chi_ = 0.0;
    std::size_t n_ = 0;
    std::size_t clipped_ = 0;
    bool last_clipped_ = false;
    bool bypass_ = false;
};

/// Header `n,x,u,alpha_minus,alpha_plus,chi,clipped`.
void write_adic_trace_csv(std::ostream& out, const std::vector<AdicTraceRow>& rows);

} // namespace onm
