#include "loclab/window_family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "loclab/errors.hpp"

namespace loclab {

std::string to_string(XiShape shape) {
    switch (shape) {
        case XiShape::LogLog: return "loglog";
        case XiShape::Log1pLog: return "log1p_log";
        case XiShape::SqrtLog: return "sqrt_log";
    }
    return "?";
}

XiShape xi_shape_from_string(const std::string& name) {
    if (name == "loglog") return XiShape::LogLog;
    if (name == "log1p_log") return XiShape::Log1pLog;
    if (name == "sqrt_log") return XiShape::SqrtLog;
    throw ConfigError("unknown xi function '" + name + "' (expected loglog, log1p_log or sqrt_log)");
}

WindowFamily WindowFamily::power_log(double M) {
    if (!(M > 0.0) || !std::isfinite(M)) throw DomainError("power-log exponent M must be a positive finite number");
    return {Kind::PowerLog, M, XiShape::LogLog, false};
}

WindowFamily WindowFamily::growing_log(XiShape xi, double scale, bool cap_at_level) {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("xi scale must be a positive finite number");
    return {Kind::GrowingLog, scale, xi, cap_at_level};
}

WindowFamily WindowFamily::constant(double c) {
    if (!(c >= 1.0) || !std::isfinite(c)) throw DomainError("constant window width must be >= 1");
    return {Kind::Constant, c, XiShape::LogLog, false};
}

namespace {

double xi_value(XiShape shape, double log_N) {
    switch (shape) {
        case XiShape::LogLog: return std::max(0.0, std::log(log_N));  // clamped so xi stays non-decreasing below e^e
        case XiShape::Log1pLog: return std::log1p(log_N);
        case XiShape::SqrtLog: return std::sqrt(log_N);
    }
    throw InvariantError("unknown xi shape");
}

}  // namespace

double WindowFamily::power_at(double log_N) const {
    if (std::isnan(log_N)) throw DomainError("window level is NaN");
    if (!(log_N > 0.0)) {
        std::ostringstream os;
        os << "window " << describe() << " needs log N > 0, got N = " << std::exp(log_N);
        throw DomainError(os.str());
    }
    return kind_ == Kind::GrowingLog ? param_ * xi_value(xi_, log_N) : param_;
}

double WindowFamily::log_width(double log_N) const {
    if (std::isnan(log_N)) throw DomainError("window level is NaN");
    // log(1 + 1/N), the floor every family respects
    const double log_floor = std::log1p(std::exp(-log_N));
    double raw;
    if (kind_ == Kind::Constant) {
        raw = std::log(param_);
    } else {
        raw = power_at(log_N) * std::log(log_N);
        if (cap_ && raw > log_N) raw = log_N;
    }
    return raw > log_floor ? raw : log_floor;
}

double WindowFamily::operator()(double N) const {
    if (!(N > 0.0)) throw DomainError("window level must be positive");
    const double floor = 1.0 + 1.0 / N;
    double f;
    if (kind_ == Kind::Constant) {
        f = param_;
    } else {
        // direct power rather than exp(log) keeps integer-valued widths exact
        const double log_N = std::log(N);
        f = std::pow(log_N, power_at(log_N));
        if (cap_ && f > N) f = N;
    }
    return f > floor ? f : floor;
}

std::string WindowFamily::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::PowerLog: os << "power_log(M=" << param_ << ")"; break;
        case Kind::GrowingLog:
            os << "growing_log(xi=" << param_ << "*" << to_string(xi_) << (cap_ ? ",capped" : "") << ")";
            break;
        case Kind::Constant: os << "constant(" << param_ << ")"; break;
    }
    return os.str();
}

}  // namespace loclab
