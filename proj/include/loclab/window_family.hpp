#pragma once

#include <string>

namespace loclab {

/// Named non-decreasing exponent functions for growing-log windows.
enum class XiShape {
    LogLog,      ///< xi(N) = max(0, log log N)
    Log1pLog,    ///< xi(N) = log(1 + log N)
    SqrtLog,     ///< xi(N) = sqrt(log N)
};

std::string to_string(XiShape shape);
XiShape xi_shape_from_string(const std::string& name);

/// Localization width rule N -> f_N.
///
/// PowerLog:   f_N = (log N)^M
/// GrowingLog: f_N = (log N)^(scale * xi(N)), optionally capped at f_N <= N
/// Constant:   f_N = c (diagnostic families for schedule tests)
///
/// Every family is floored at 1 + 1/N. Log-based families need log N > 0.
class WindowFamily {
public:
    enum class Kind { PowerLog, GrowingLog, Constant };

    static WindowFamily power_log(double M);
    static WindowFamily growing_log(XiShape xi, double scale = 1.0, bool cap_at_level = false);
    static WindowFamily constant(double c);

    Kind kind() const noexcept { return kind_; }
    double exponent() const noexcept { return param_; }  // M, xi scale, or c
    XiShape xi() const noexcept { return xi_; }
    bool capped() const noexcept { return cap_; }

    /// f_N including the 1 + 1/N floor.
    double operator()(double N) const;

    /// log f_N given log N; usable at levels far beyond double range.
    double log_width(double log_N) const;

    std::string describe() const;

    friend bool operator==(const WindowFamily&, const WindowFamily&) = default;

private:
    WindowFamily(Kind kind, double param, XiShape xi, bool cap) : kind_(kind), param_(param), xi_(xi), cap_(cap) {}

    double power_at(double log_N) const;

    Kind kind_;
    double param_;
    XiShape xi_;
    bool cap_;
};

}  // namespace loclab
