#pragma once

// The comparison-theorem decision procedure and its report.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lct/gauss_manin.hpp"
#include "lct/logder.hpp"
#include "lct/quasihom.hpp"

namespace lct {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

enum class Verdict { LctHolds, LctFails, Unknown, Smooth, QhCoordinateLimit };
std::string to_string(Verdict v);

enum class ConditionStatus { Fired, NotFired, NotApplicable };
std::string to_string(ConditionStatus s);

struct Condition {
    ConditionStatus status = ConditionStatus::NotApplicable;
    std::string detail;
};

struct LogderSummary {
    std::vector<Derivation> generators;
    std::vector<Rational> traces;
    std::vector<bool> nilpotent;
    std::vector<Rational> residues;  // tr(delta_0) - h(0)
    bool complete = true;
    int degree_bound = 0;
    std::vector<std::string> problems;  // failed invariant checks, empty when all hold
};

struct SelfCheckItem {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct AnalyzeOptions {
    int order = 0;     // 0: automatic
    int x_degree = 0;  // 0: automatic
    int max_order = 24;
    int degree_bound = 0;  // 0: default for the logarithmic field computation
    bool logder = false;
    bool selfcheck = false;
};

struct LctReport {
    std::string input;
    std::vector<std::string> vars;
    std::string canonical;
    std::optional<std::size_t> mu;
    bool quasihomogeneous = false;
    std::optional<WeightSystem> weights;
    std::optional<HollandMondResult> holland_mond;
    std::optional<Spectrum> spectrum;
    std::optional<Rational> alpha1, alpha2;
    std::optional<bool> eigenvalue_one;
    Condition a, b, c, d;
    std::optional<bool> h0_n_direct;
    std::optional<LogderSummary> logder;
    std::vector<SelfCheckItem> selfcheck;
    Verdict verdict = Verdict::Unknown;
    std::vector<std::string> justification;
    std::vector<std::string> notes;
    int order = 0;
    int x_degree = 0;
};

/// Runs the decision table. Throws PreconditionError (f(0) != 0, one variable), NonIsolatedError,
/// TruncationInsufficient.
LctReport analyze(const Polynomial& f, const std::vector<std::string>& vars, const AnalyzeOptions& opt,
                  const std::string& input_text = "");

/// Symmetry, count, range, closed-form oracles where they apply, and a Sebastiani-Thom cross-check.
std::vector<SelfCheckItem> spectrum_selfcheck(const Polynomial& f, const AnalyzeOptions& opt = {});

nlohmann::json to_json(const LctReport& r);
std::string render_text(const LctReport& r);

/// Caches serialized reports on disk, one file per key, written atomically.
class ReportCache {
public:
    explicit ReportCache(std::string dir);
    static std::string key_material(const Polynomial& f, const std::vector<std::string>& vars,
                                    const AnalyzeOptions& opt);
    std::optional<std::string> get(const std::string& material) const;
    void put(const std::string& material, const std::string& report) const;

private:
    std::string path_for(const std::string& material) const;
    std::string dir_;
};

}  // namespace lct
