#include "ffiredt/evalfuncs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ffiredt/error.hpp"

namespace ffiredt {

std::optional<EvalFunction> eval_function_from_name(std::string_view name) {
    for (EvalFunction ef : kAllEvalFunctions) {
        if (eval_function_name(ef) == name) return ef;
    }
    return std::nullopt;
}

namespace {

double city_block(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += std::fabs(x[i] - y[i]);
    return sum;
}

double euclidean(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double chebyshev(std::span<const double> x, std::span<const double> y) {
    double mx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) mx = std::max(mx, std::fabs(x[i] - y[i]));
    return mx;
}

double canberra(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double denom = std::fabs(x[i]) + std::fabs(y[i]);
        if (denom > 0.0) sum += std::fabs(x[i] - y[i]) / denom;
    }
    return sum;
}

double smooth(double v) { return v < kDivergenceEpsilon ? kDivergenceEpsilon : v; }

double kullback_leibler(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = smooth(x[i]);
        const double yi = smooth(y[i]);
        sum += xi * std::log(xi / yi);
    }
    return sum;
}

double jeffrey(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = smooth(x[i]);
        const double yi = smooth(y[i]);
        if (xi == yi) continue;
        // (xi - yi) * log(xi / yi) evaluated high-over-low, so that both
        // argument orders produce identical terms.
        const double hi = std::max(xi, yi);
        const double lo = std::min(xi, yi);
        sum += (hi - lo) * std::log(hi / lo);
    }
    return sum;
}

}  // namespace

double evaluate_values(EvalFunction ef, std::span<const double> x, std::span<const double> y) {
    switch (ef) {
        case EvalFunction::CityBlock: return city_block(x, y);
        case EvalFunction::Euclidean: return euclidean(x, y);
        case EvalFunction::Chebyshev: return chebyshev(x, y);
        case EvalFunction::Canberra: return canberra(x, y);
        case EvalFunction::KullbackLeibler: return kullback_leibler(x, y);
        case EvalFunction::Jeffrey: return jeffrey(x, y);
    }
    return 0.0;
}

double evaluate(EvalFunction ef, const FeatureVector& x, const FeatureVector& y) {
    if (x.descriptor != y.descriptor) {
        throw CompareError("cannot compare feature vectors of different descriptors (" +
                           std::string(descriptor_name(x.descriptor)) + " vs " +
                           std::string(descriptor_name(y.descriptor)) + ")");
    }
    if (x.values.size() != y.values.size()) {
        throw CompareError("dimension mismatch: " + std::to_string(x.values.size()) + " vs " +
                           std::to_string(y.values.size()));
    }
    for (std::span<const double> v : {std::span<const double>(x.values), std::span<const double>(y.values)}) {
        for (double c : v) {
            if (!std::isfinite(c)) throw CompareError("non-finite feature component");
        }
    }
    return evaluate_values(ef, x.values, y.values);
}

AxiomReport check_metric_axioms(EvalFunction ef, std::span<const VectorTriple> samples) {
    AxiomReport report;
    constexpr double kTriangleRelTol = 1e-9;
    for (const VectorTriple& t : samples) {
        ++report.triples_checked;
        const double dab = evaluate_values(ef, t.a, t.b);
        const double dba = evaluate_values(ef, t.b, t.a);
        const double dac = evaluate_values(ef, t.a, t.c);
        const double dcb = evaluate_values(ef, t.c, t.b);
        if (dab != dba) ++report.symmetry_violations;
        if (dab < 0.0 || evaluate_values(ef, t.a, t.a) != 0.0) ++report.identity_violations;
        const double bound = dac + dcb;
        if (dab > bound + kTriangleRelTol * std::fabs(bound)) ++report.triangle_violations;
    }
    return report;
}

}  // namespace ffiredt
