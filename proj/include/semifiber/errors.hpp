#pragma once

#include <stdexcept>
#include <string>

namespace semifiber {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// gcd of generators != 1
struct NotCofinite : Error {
    explicit NotCofinite(const std::string& what) : Error(what) {}
};

// length_between / length_quotient called on a non-inclusion
struct NotContained : Error {
    explicit NotContained(const std::string& what) : Error(what) {}
};

// user-supplied window bound below the computed minimum
struct BadOverride : Error {
    explicit BadOverride(const std::string& what) : Error(what) {}
};

// module closure or power computation ran out of representable degrees;
// the caller should rebuild with a larger window and retry
struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& what) : Error(what) {}
};

struct ClosureOverflow : PrecisionExhausted {
    explicit ClosureOverflow(const std::string& what) : PrecisionExhausted(what) {}
};

// randomized isomorphism test could not decide (prime-field mode only)
struct Inconclusive : Error {
    explicit Inconclusive(const std::string& what) : Error(what) {}
};

// construction invoked outside its hypotheses (e.g. DVR branch required)
struct NotApplicable : Error {
    explicit NotApplicable(const std::string& what) : Error(what) {}
};

struct ValidationFailed : Error {
    explicit ValidationFailed(const std::string& what) : Error(what) {}
};

struct NormalizationFailed : Error {
    explicit NormalizationFailed(const std::string& what) : Error(what) {}
};

struct SearchExhausted : Error {
    explicit SearchExhausted(const std::string& what) : Error(what) {}
};

struct GuardExceeded : Error {
    explicit GuardExceeded(const std::string& what) : Error(what) {}
};

}  // namespace semifiber
