#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace onm {

/// Sign-driven quantile tracker:
///   Q <- Q + delta * (sgn(y - Q) + 2q - 1),  sgn(0) = 0.
class QuantileTracker {
public:
    QuantileTracker(double q, double delta);

    /// Starts at `value` on the first call to step() unless initialized earlier.
    void initialize(double value) noexcept;
    double step(double y) noexcept;

    double q() const noexcept { return q_; }
    double delta() const noexcept { return delta_; }
    void set_delta(double delta);
    double estimate() const noexcept { return estimate_; }
    bool initialized() const noexcept { return initialized_; }

private:
    double q_;
    double delta_;
    double estimate_ = 0.0;
    bool initialized_ = false;
};

struct Fences {
    double lower = 0.0;
    double upper = 0.0;
};

struct FenceParams {
    double beta = 1.5;    // fence scale
    double weight = 2.0;  // trimean weight w
    /// Tracker step per sample. Zero selects the automatic step:
    /// auto_step_fraction times the interquartile range of the first
    /// calibration_length samples.
    double step = 0.0;
    double auto_step_fraction = 0.01;
    std::size_t calibration_length = 1024;
    /// Fences are never closer than `floor` to the DCL.
    double floor = 0.0;

    void validate() const;
};

/// Three quantile trackers (q = 0.25, 0.5, 0.75) with Tukey fences and a
/// trimean-style differential clipping level.
///
/// The first calibration_length samples are buffered. When the buffer is full
/// the step is fixed (automatic or explicit), each tracker starts at the exact
/// quantile of the buffer, the buffer is replayed through them and the
/// tracker becomes ready.
class FenceTracker {
public:
    explicit FenceTracker(FenceParams params = {});

    void update(double y);
    bool ready() const noexcept { return ready_; }
    std::size_t count() const noexcept { return count_; }

    double q1() const noexcept { return q1_.estimate(); }
    double q2() const noexcept { return q2_.estimate(); }
    double q3() const noexcept { return q3_.estimate(); }
    double step() const noexcept { return q1_.delta(); }

    /// Tukey fences from the ordered quartile pair, widened to the floor.
    Fences fences() const noexcept;
    /// (Q1 + w Q2 + Q3) / (w + 2), clamped to [min(Q1,Q3), max(Q1,Q3)].
    double dcl() const noexcept;

    void set_floor(double floor);
    const FenceParams& params() const noexcept { return params_; }

private:
    void start();

    FenceParams params_;
    QuantileTracker q1_, q2_, q3_;
    std::vector<double> buffer_;
    std::size_t count_ = 0;
    bool ready_ = false;
};

/// Tukey fences for given quartiles.
Fences tukey_fences(double q1, double q3, double beta) noexcept;
/// Trimean-weighted mid-range.
double trimean_level(double q1, double q2, double q3, double weight) noexcept;

struct FenceTraceRow {
    double q1, q2, q3, lower, upper, dcl;
};

/// Per-sample tracker trace: header `n,q1,q2,q3,alpha_minus,alpha_plus,dcl`.
void write_fence_trace_csv(std::ostream& out, const std::vector<FenceTraceRow>& rows);

} // namespace onm
