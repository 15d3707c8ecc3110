#include "dwring/profiles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "dwring/error.hpp"

namespace dwring {

namespace {

double required(const std::map<std::string, double>& params, const char* key) {
    const auto it = params.find(key);
    if (it == params.end()) {
        throw std::invalid_argument(fmt::format("profile parameter '{}' missing", key));
    }
    return it->second;
}

int required_int(const std::map<std::string, double>& params, const char* key) {
    const double v = required(params, key);
    if (v != std::floor(v)) {
        throw std::invalid_argument(fmt::format("profile parameter '{}' must be an integer", key));
    }
    return static_cast<int>(v);
}

}  // namespace

std::string to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::cosine: return "cosine";
        case ProfileKind::two_value: return "two_value";
        case ProfileKind::staggered: return "staggered";
        case ProfileKind::explicit_list: return "explicit";
    }
    return "explicit";
}

ProfileKind profile_kind_from_string(const std::string& name) {
    if (name == "cosine") return ProfileKind::cosine;
    if (name == "two_value") return ProfileKind::two_value;
    if (name == "staggered") return ProfileKind::staggered;
    if (name == "explicit") return ProfileKind::explicit_list;
    throw std::invalid_argument(fmt::format("unknown profile kind '{}'", name));
}

ExchangeProfile::ExchangeProfile(std::vector<double> couplings, ProfileProvenance provenance)
    : couplings_(std::move(couplings)), provenance_(std::move(provenance)) {
    if (couplings_.size() < 2) {
        throw std::invalid_argument("an exchange profile needs at least two couplings");
    }
    for (std::size_t k = 0; k < couplings_.size(); ++k) {
        if (!(couplings_[k] > 0.0) || !std::isfinite(couplings_[k])) {
            throw AfmViolationError(
                fmt::format("coupling J_{} = {} is not strictly positive", k + 1, couplings_[k]));
        }
    }
}

ExchangeProfile cosine_profile(double j0, double j1, double phase) {
    if (j1 < 0.0) throw AfmViolationError("modulation amplitude j1 must be non-negative");
    std::vector<double> j(3);
    for (int k = 1; k <= 3; ++k) {
        j[k - 1] = j0 + j1 * std::cos(2.0 * std::numbers::pi * (k - 1) / 3.0 - phase);
    }
    return ExchangeProfile(std::move(j),
                           {ProfileKind::cosine, {{"j0", j0}, {"j1", j1}, {"phase", phase}}});
}

ExchangeProfile two_value_profile(double j, double a, int n_c) {
    if (n_c < 3 || n_c % 2 == 0) {
        throw std::invalid_argument("two-value profile needs an odd ring of at least 3 sites");
    }
    if (a > 1.0) throw RangeError("dimerization ratio a must lie in (0, 1]");
    if (!(j > 0.0) || !(a > 0.0)) throw AfmViolationError("two-value profile needs j > 0 and a > 0");

    // Wall on site m+1: the bonds on either side pair sites away from it, and
    // the closing bond n_c is strong exactly when m is odd.
    const int m = (n_c - 1) / 2;
    std::vector<double> couplings(static_cast<std::size_t>(n_c));
    for (int k = 1; k <= n_c; ++k) {
        bool strong = false;
        if (k <= m) {
            strong = (m - k) % 2 == 1;
        } else if (k <= 2 * m) {
            strong = (k - m - 1) % 2 == 1;
        } else {
            strong = m % 2 == 1;
        }
        couplings[static_cast<std::size_t>(k - 1)] = strong ? j : a * j;
    }
    return ExchangeProfile(
        std::move(couplings),
        {ProfileKind::two_value, {{"j", j}, {"a", a}, {"n_c", static_cast<double>(n_c)}}});
}

double staggered_order_parameter(double x, double width, int n_images, int n_c) {
    double sum = 0.0;
    double norm = 0.0;
    for (int r = -n_images; r <= n_images; ++r) {
        const double sign = (r % 2 == 0) ? 1.0 : -1.0;
        sum += sign * std::tanh((x - r * n_c) / width);
        norm += sign * std::tanh((0.5 * n_c - r * n_c) / width);
    }
    return sum / norm;
}

ExchangeProfile staggered_profile(const StaggeredParams& p) {
    if (!(p.j > 0.0)) throw AfmViolationError("staggered profile needs j > 0");
    if (!(p.a > 0.0 && p.a < 1.0)) throw RangeError("staggered profile needs 0 < a < 1");
    if (!(p.width > 0.0)) throw RangeError("staggered profile needs a positive wall width");
    if (p.n_images < 1) throw RangeError("staggered profile needs at least one image");
    if (p.n_c < 2) throw std::invalid_argument("staggered profile needs n_c >= 2");

    const double k0 = 0.5 * (p.n_c + 1) + p.delta_k;
    const double mean = 0.5 * p.j * (1.0 + p.a);
    const double amplitude = 0.5 * p.j * (1.0 - p.a);
    std::vector<double> couplings(static_cast<std::size_t>(p.n_c));
    for (int k = 1; k <= p.n_c; ++k) {
        const double parity = (k % 2 == 0) ? 1.0 : -1.0;
        couplings[static_cast<std::size_t>(k - 1)] =
            mean + amplitude * parity *
                       staggered_order_parameter(k - k0, p.width, p.n_images, p.n_c);
    }
    return ExchangeProfile(std::move(couplings),
                           {ProfileKind::staggered,
                            {{"j", p.j},
                             {"a", p.a},
                             {"w", p.width},
                             {"n", static_cast<double>(p.n_images)},
                             {"delta_k", p.delta_k},
                             {"n_c", static_cast<double>(p.n_c)}}});
}

ExchangeProfile rotate_profile(const ExchangeProfile& profile, int shift) {
    const int n = static_cast<int>(profile.size());
    const int s = ((shift % n) + n) % n;
    std::vector<double> rotated(profile.size());
    for (int k = 0; k < n; ++k) {
        rotated[static_cast<std::size_t>(k)] =
            profile.couplings()[static_cast<std::size_t>(((k - s) % n + n) % n)];
    }
    ProfileProvenance prov = profile.provenance();
    const double previous = prov.params.count("shift") ? prov.params["shift"] : 0.0;
    prov.params["shift"] = static_cast<double>((static_cast<int>(previous) + s) % n);
    return ExchangeProfile(std::move(rotated), std::move(prov));
}

ExchangeProfile generate_profile(ProfileKind kind, const std::map<std::string, double>& params) {
    ExchangeProfile base = [&] {
        switch (kind) {
            case ProfileKind::cosine:
                return cosine_profile(required(params, "j0"), required(params, "j1"),
                                      required(params, "phase"));
            case ProfileKind::two_value:
                return two_value_profile(required(params, "j"), required(params, "a"),
                                         params.count("n_c") ? required_int(params, "n_c") : 5);
            case ProfileKind::staggered: {
                StaggeredParams p;
                p.j = required(params, "j");
                p.a = required(params, "a");
                p.width = required(params, "w");
                p.n_images = required_int(params, "n");
                p.delta_k = params.count("delta_k") ? required(params, "delta_k") : 0.0;
                p.n_c = params.count("n_c") ? required_int(params, "n_c") : 5;
                return staggered_profile(p);
            }
            case ProfileKind::explicit_list: break;
        }
        throw std::invalid_argument("explicit profiles carry their couplings, not parameters");
    }();
    const auto it = params.find("shift");
    if (it != params.end() && it->second != 0.0) {
        return rotate_profile(base, required_int(params, "shift"));
    }
    return base;
}

}  // namespace dwring
