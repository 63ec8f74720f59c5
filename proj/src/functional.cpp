#include "stable_limits/functional.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stable_limits/errors.hpp"
#include "stable_limits/rng.hpp"

namespace stable_limits {

FunctionalF::FunctionalF(FunctionalTag tag, double param) : tag_(tag), param_(param) {
    switch (tag_) {
        case FunctionalTag::constant:
            holder_K_ = 1.0;
            holder_a_ = 1.0;
            bound_ = std::abs(param_);
            break;
        case FunctionalTag::sine:
        case FunctionalTag::cosine:
            holder_K_ = 1.0;
            holder_a_ = 1.0;
            bound_ = 1.0;
            break;
        case FunctionalTag::clamped_identity:
            if (!(param_ > 0.0))
                throw std::invalid_argument("clamped_identity requires a positive clamp level");
            holder_K_ = 1.0;
            holder_a_ = 1.0;
            bound_ = param_;
            break;
        case FunctionalTag::reciprocal_quadratic:
            // max |f'| = 3*sqrt(3)/8 at x = 1/sqrt(3)
            holder_K_ = 3.0 * std::sqrt(3.0) / 8.0;
            holder_a_ = 1.0;
            bound_ = 1.0;
            break;
        default:
            throw std::invalid_argument("unknown functional tag");
    }
    verify_holder();
}

double FunctionalF::operator()(double x) const {
    switch (tag_) {
        case FunctionalTag::constant: return param_;
        case FunctionalTag::sine: return std::sin(x);
        case FunctionalTag::cosine: return std::cos(x);
        case FunctionalTag::clamped_identity: return std::clamp(x, -param_, param_);
        case FunctionalTag::reciprocal_quadratic: return 1.0 / (1.0 + x * x);
    }
    return 0.0;
}

void FunctionalF::verify_holder() const {
    RngStream rng(0x486f6c646572ULL);  // fixed certificate stream
    const double slack = 1.0 + 1e-9;
    for (int i = 0; i < 1000000; ++i) {
        const double x = (rng.uniform01() - 0.5) * 40.0;
        const double y = (rng.uniform01() - 0.5) * 40.0;
        const double lhs = std::abs((*this)(x) - (*this)(y));
        const double rhs = holder_K_ * std::pow(std::abs(x - y), holder_a_) * slack;
        if (lhs > rhs)
            throw NumericalError("FunctionalF: Holder certificate failed for tag " + id());
        if (std::abs((*this)(x)) > bound_ * slack)
            throw NumericalError("FunctionalF: bound certificate failed for tag " + id());
    }
}

FunctionalF FunctionalF::parse(const std::string& id) {
    const auto colon = id.find(':');
    const std::string name = id.substr(0, colon);
    double param = 0.0;
    bool has_param = colon != std::string::npos;
    if (has_param) {
        try {
            param = std::stod(id.substr(colon + 1));
        } catch (const std::exception&) {
            throw ConfigError("functional id '" + id + "': bad parameter");
        }
    }
    if (name == "sine") return FunctionalF(FunctionalTag::sine);
    if (name == "cosine") return FunctionalF(FunctionalTag::cosine);
    if (name == "reciprocal_quadratic") return FunctionalF(FunctionalTag::reciprocal_quadratic);
    if (name == "constant") {
        if (!has_param) throw ConfigError("functional 'constant' needs a value, e.g. constant:1");
        return FunctionalF(FunctionalTag::constant, param);
    }
    if (name == "clamped_identity") {
        if (!has_param)
            throw ConfigError("functional 'clamped_identity' needs a clamp level, e.g. clamped_identity:2");
        return FunctionalF(FunctionalTag::clamped_identity, param);
    }
    throw ConfigError("unknown functional id '" + id + "'");
}

std::string FunctionalF::id() const {
    switch (tag_) {
        case FunctionalTag::constant: return "constant:" + std::to_string(param_);
        case FunctionalTag::sine: return "sine";
        case FunctionalTag::cosine: return "cosine";
        case FunctionalTag::clamped_identity: return "clamped_identity:" + std::to_string(param_);
        case FunctionalTag::reciprocal_quadratic: return "reciprocal_quadratic";
    }
    return "?";
}

}  // namespace stable_limits
