#pragma once
#include <stdexcept>
#include <string>

namespace rmk3 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a rational coefficient has a denominator divisible by p
struct BadDenominator : Error {
    explicit BadDenominator(const std::string& m) : Error("bad denominator: " + m) {}
};

// the requested field size is outside the supported range
struct BadPrime : Error {
    explicit BadPrime(const std::string& m) : Error("bad prime/field: " + m) {}
};

struct NotGoodPrime : Error {
    explicit NotGoodPrime(const std::string& m) : Error("not a good prime: " + m) {}
};

struct ZeroDiscriminant : Error {
    explicit ZeroDiscriminant(const std::string& m) : Error("zero discriminant: " + m) {}
};

struct NoValidSign : Error {
    explicit NoValidSign(const std::string& m) : Error("no functional-equation sign validates: " + m) {}
};

struct Ambiguous : Error {
    explicit Ambiguous(const std::string& m) : Error("ambiguous result: " + m) {}
};

struct ExhaustedPrimes : Error {
    explicit ExhaustedPrimes(const std::string& m) : Error("prime supply exhausted: " + m) {}
};

struct NotIrreducible : Error {
    explicit NotIrreducible(const std::string& m) : Error("polynomial not irreducible: " + m) {}
};

struct NotSumOfTwoSquares : Error {
    explicit NotSumOfTwoSquares(const std::string& m) : Error("not a sum of two squares: " + m) {}
};

struct ZeroValue : Error {
    explicit ZeroValue(const std::string& m) : Error("zero value: " + m) {}
};

// integer could not be fully factored by the available methods
struct FactorError : Error {
    explicit FactorError(const std::string& m) : Error("factorization failed: " + m) {}
};

}  // namespace rmk3
