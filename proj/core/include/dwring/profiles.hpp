#pragma once

// Exchange profiles {J_k} of a single periodic ring. Bond k joins sites k and
// k+1, with site n_c + 1 identified with site 1. Bonds are numbered from 1.

#include <map>
#include <span>
#include <string>
#include <vector>

namespace dwring {

enum class ProfileKind { cosine, two_value, staggered, explicit_list };

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

/// Generating parameters of a profile. Echoed in output, never used for numerics.
struct ProfileProvenance {
    ProfileKind kind = ProfileKind::explicit_list;
    std::map<std::string, double> params;
};

class ExchangeProfile {
public:
    /// Throws AfmViolationError unless every coupling is strictly positive,
    /// std::invalid_argument when fewer than two couplings are given.
    explicit ExchangeProfile(std::vector<double> couplings, ProfileProvenance provenance = {});

    std::size_t size() const noexcept { return couplings_.size(); }
    std::span<const double> couplings() const noexcept { return couplings_; }
    double coupling(int bond) const { return couplings_.at(static_cast<std::size_t>(bond - 1)); }
    const ProfileProvenance& provenance() const noexcept { return provenance_; }

    friend bool operator==(const ExchangeProfile& a, const ExchangeProfile& b) {
        return a.couplings_ == b.couplings_;
    }

private:
    std::vector<double> couplings_;
    ProfileProvenance provenance_;
};

/// Three-site ring, J_k = j0 + j1 cos(2 pi (k-1)/3 - phase).
ExchangeProfile cosine_profile(double j0, double j1, double phase);

/// Dimerized odd ring built from the two values j and a*j with the domain wall
/// on the central site. For n_c = 5 this is {j, aj, aj, j, aj}.
ExchangeProfile two_value_profile(double j, double a, int n_c = 5);

struct StaggeredParams {
    double j = 1.0;
    double a = 0.1;
    double width = 2.0;
    int n_images = 50;
    double delta_k = 0.0;
    int n_c = 5;
};

/// Smooth kink with alternating-sign images one ring length apart, normalized
/// so that the value at x = n_c/2 is one.
double staggered_order_parameter(double x, double width, int n_images, int n_c);

/// J_k = j(1+a)/2 + [j(1-a)/2] (-1)^k alpha(k - k0), k0 = (n_c+1)/2 + delta_k.
ExchangeProfile staggered_profile(const StaggeredParams& params);

/// couplings'[k] = couplings[k - shift], cyclically. Moves the domain wall by
/// `shift` sites in the direction of increasing site index.
ExchangeProfile rotate_profile(const ExchangeProfile& profile, int shift);

/// Rebuilds a profile from its kind and parameters (the inverse of provenance).
/// A "shift" parameter, when present, is applied with rotate_profile.
ExchangeProfile generate_profile(ProfileKind kind, const std::map<std::string, double>& params);

}  // namespace dwring
