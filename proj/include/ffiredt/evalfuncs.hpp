#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ffiredt/feature.hpp"

namespace ffiredt {

/// The six evaluation functions. City-Block, Euclidean, Chebyshev and
/// Canberra are metric distance functions; the two divergences are not.
enum class EvalFunction : std::uint8_t {
    CityBlock,
    Euclidean,
    Chebyshev,
    Canberra,
    KullbackLeibler,
    Jeffrey,
};

inline constexpr std::array<EvalFunction, 6> kAllEvalFunctions = {
    EvalFunction::CityBlock, EvalFunction::Euclidean,        EvalFunction::Chebyshev,
    EvalFunction::Canberra,  EvalFunction::KullbackLeibler,  EvalFunction::Jeffrey,
};

constexpr bool is_metric(EvalFunction ef) {
    return ef == EvalFunction::CityBlock || ef == EvalFunction::Euclidean ||
           ef == EvalFunction::Chebyshev || ef == EvalFunction::Canberra;
}

constexpr std::string_view eval_function_name(EvalFunction ef) {
    switch (ef) {
        case EvalFunction::CityBlock: return "cb";
        case EvalFunction::Euclidean: return "eu";
        case EvalFunction::Chebyshev: return "ch";
        case EvalFunction::Canberra: return "ca";
        case EvalFunction::KullbackLeibler: return "ku";
        case EvalFunction::Jeffrey: return "jf";
    }
    return "?";
}

std::optional<EvalFunction> eval_function_from_name(std::string_view name);

/// Components below this floor are lifted to it before the divergences
/// (Kullback-Leibler, Jeffrey) are evaluated. No renormalization happens.
inline constexpr double kDivergenceEpsilon = 1e-10;

/// Dissimilarity of two raw value sequences of equal length. No validation
/// beyond the length contract; callers on hot paths use this directly.
double evaluate_values(EvalFunction ef, std::span<const double> x, std::span<const double> y);

/// Checked variant: throws CompareError on descriptor mismatch, dimension
/// mismatch or non-finite components.
double evaluate(EvalFunction ef, const FeatureVector& x, const FeatureVector& y);

struct VectorTriple {
    std::vector<double> a, b, c;
};

/// Violation counts of the metric axioms over sampled triples. Symmetry and
/// identity are checked exactly; the triangle inequality with relative
/// tolerance 1e-9.
struct AxiomReport {
    std::uint64_t triples_checked = 0;
    std::uint64_t symmetry_violations = 0;
    std::uint64_t identity_violations = 0;  // non-negativity or d(x,x) != 0
    std::uint64_t triangle_violations = 0;
};

AxiomReport check_metric_axioms(EvalFunction ef, std::span<const VectorTriple> samples);

}  // namespace ffiredt
