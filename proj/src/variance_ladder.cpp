#include "loclab/variance_ladder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "loclab/errors.hpp"
#include "loclab/stats.hpp"

namespace loclab {

VarianceProfile::VarianceProfile(std::vector<double> sigma_sq, std::string label)
    : sigma_sq_(std::move(sigma_sq)), label_(std::move(label)) {
    if (sigma_sq_.empty()) throw DegenerateError("variance profile is empty");
    prefix_.reserve(sigma_sq_.size() + 1);
    prefix_.push_back(0.0);
    CompensatedSum acc;
    for (std::size_t i = 0; i < sigma_sq_.size(); ++i) {
        const double v = sigma_sq_[i];
        if (!(v >= 0.0) || !std::isfinite(v)) {
            std::ostringstream os;
            os << "variance at index " << i + 1 << " is not a finite non-negative number";
            throw SpecError(os.str());
        }
        acc.add(v);
        prefix_.push_back(acc.value());
        if (first_positive_ == 0 && prefix_.back() > 0.0) first_positive_ = i + 1;
    }
    if (first_positive_ == 0) throw DegenerateError("variance profile '" + label_ + "' has zero total variance");
}

double VarianceProfile::sigma_sq(std::size_t j) const {
    if (j < 1 || j > size()) throw RangeError("variance index out of range");
    return sigma_sq_[j - 1];
}

double VarianceProfile::prefix(std::size_t n) const {
    if (n > size()) throw RangeError("prefix index out of range");
    return prefix_[n];
}

double VarianceProfile::s(std::size_t n) const { return std::sqrt(prefix(n)); }

double cumulative_variance(const VarianceProfile& profile, std::size_t n) {
    if (n < 1 || n > profile.size()) {
        std::ostringstream os;
        os << "index " << n << " outside [1, " << profile.size() << "]";
        throw RangeError(os.str());
    }
    return profile.prefix(n);
}

RatioBound ratio_bound(const VarianceProfile& profile) {
    RatioBound out;
    const auto prefix = profile.prefix_sums();
    for (std::size_t j = profile.first_positive(); j < profile.size(); ++j) {
        const double r = std::sqrt(prefix[j + 1] / prefix[j]);
        if (r > out.D) {
            out.D = r;
            out.argmax_j = j;
        }
    }
    return out;
}

std::size_t index_of_variance(const VarianceProfile& profile, double level) {
    const auto prefix = profile.prefix_sums();
    if (std::isnan(level) || level < prefix[1]) {
        std::ostringstream os;
        os << "variance level " << level << " is below s_1^2 = " << prefix[1];
        throw DomainError(os.str());
    }
    if (level > profile.horizon()) {
        std::ostringstream os;
        os << "variance level " << level << " exceeds the horizon; largest representable level is "
           << profile.horizon();
        throw HorizonError(os.str(), profile.horizon());
    }
    const auto it = std::upper_bound(prefix.begin() + 1, prefix.end(), level);
    return static_cast<std::size_t>(it - prefix.begin()) - 1;
}

IndexWindow window(const VarianceProfile& profile, double N, const WindowFamily& f) {
    if (!(N >= 1.0)) {
        std::ostringstream os;
        os << "window level N = " << N << " must be >= 1";
        throw DomainError(os.str());
    }
    IndexWindow w;
    w.N = N;
    w.width = f(N);
    const double top = N * w.width;
    if (top > profile.horizon()) {
        std::ostringstream os;
        os << "window top N*f_N = " << top << " exceeds the horizon; largest representable level is "
           << profile.horizon();
        throw HorizonError(os.str(), profile.horizon());
    }
    // below s_1^2 no index qualifies yet, so the window simply starts at 1
    const double s1 = profile.prefix(1);
    w.lo = N < s1 ? 0 : index_of_variance(profile, N);
    w.hi = top < s1 ? 0 : index_of_variance(profile, top);
    return w;
}

}  // namespace loclab
