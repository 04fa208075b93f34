#pragma once

#include <array>
#include <string>
#include <string_view>

namespace oncodp {

/// Type 1: high risk / high reward, one-shot. Type 2: repeatable treatment.
/// Type 3: surveillance.
enum class ModalityKind { Type1, Type2, Type3 };

std::string_view to_string(ModalityKind kind);
/// Accepts "type1", "type2", "type3"; throws DomainError otherwise.
ModalityKind modality_kind_from_string(std::string_view text);

/// Probability of a one-level move (down, stay, up) for one state variable.
struct IncrementRow {
    double down = 0.0;
    double stay = 1.0;
    double up = 0.0;

    constexpr std::array<double, 3> as_array() const noexcept { return {down, stay, up}; }
    constexpr double sum() const noexcept { return down + stay + up; }

    friend constexpr bool operator==(const IncrementRow&, const IncrementRow&) = default;
};

struct ModalitySpec {
    std::string name;
    ModalityKind kind = ModalityKind::Type2;
    IncrementRow phi_row; ///< side-effect increments
    IncrementRow tau_row; ///< tumor increments

    bool is_type1() const noexcept { return kind == ModalityKind::Type1; }

    friend bool operator==(const ModalitySpec&, const ModalitySpec&) = default;
};

} // namespace oncodp
