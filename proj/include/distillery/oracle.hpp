#pragma once

// Sources of heralded distillation verdicts.

#include "distillery/icm.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace distillery {

enum class DistillType : std::uint8_t { A, Y };

constexpr DistillType distill_type(OpKind k) { return k == OpKind::InjectedInitA ? DistillType::A : DistillType::Y; }
constexpr OpKind distill_kind(DistillType t) { return t == DistillType::A ? OpKind::InjectedInitA : OpKind::InjectedInitY; }
std::string_view to_string(DistillType t);

/// Where a trial sits inside the batch or sequence that launched it.
/// `required` is the number of successes the batch is guaranteed to deliver.
struct BatchPosition {
    std::int64_t index = 0;
    std::int64_t size = 1;
    std::int64_t required = 1;
};

enum class OracleMode : std::uint8_t { Stochastic, WorstCase, Scripted };

class HeraldOracle {
public:
    /// Verdict of trial k of type t is a pure function of (seed, t, k).
    static HeraldOracle stochastic(std::uint64_t seed, double p_f_a, double p_f_y);
    static HeraldOracle stochastic(std::uint64_t seed, double p_f) { return stochastic(seed, p_f, p_f); }
    /// Exactly `required` successes per batch, in its last positions.
    static HeraldOracle worst_case();
    /// Trial k of type t reads verdict k of that type's list.
    static HeraldOracle scripted(std::vector<bool> a, std::vector<bool> y);

    /// True on success. Throws OracleExhausted past the end of a script.
    [[nodiscard]] bool sample(DistillType type, std::int64_t trial_index, const BatchPosition& pos) const;

    [[nodiscard]] OracleMode mode() const noexcept { return mode_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] double p_f(DistillType t) const { return t == DistillType::A ? p_f_a_ : p_f_y_; }
    [[nodiscard]] const std::vector<bool>& script(DistillType t) const { return t == DistillType::A ? script_a_ : script_y_; }

    /// Textual form used by the CLI: "worst", "stochastic:SEED", "scripted".
    [[nodiscard]] std::string describe() const;

private:
    HeraldOracle() = default;

    OracleMode mode_ = OracleMode::WorstCase;
    std::uint64_t seed_ = 0;
    double p_f_a_ = 0.0;
    double p_f_y_ = 0.0;
    std::vector<bool> script_a_;
    std::vector<bool> script_y_;
};

bool sample_verdict(const HeraldOracle& oracle, DistillType type, std::int64_t trial_index,
                    const BatchPosition& pos = {});

/// `{"A": "FFS", "Y": "S"}`; each character is S (success) or F (failure).
HeraldOracle parse_scripted_oracle(std::string_view text);

/// splitmix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

/// Seed for run `index` of a family rooted at `base_seed`.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index);

}  // namespace distillery
