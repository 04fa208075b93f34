#pragma once

#include <compare>
#include <cstddef>
#include <string>

namespace oncodp {

/// Patient state: Type 1 history flag, side-effect level, tumor level.
struct State {
    int h = 0;
    int phi = 0;
    int tau = 0;

    friend constexpr auto operator<=>(const State&, const State&) = default;
};

std::string to_string(const State& s);

/// Bounds of the factored state space {0,1} x {0..m} x {0..n}.
///
/// States are enumerated h-major, then phi, then tau; `index` and `at` are
/// inverse to each other on valid states.
class StateSpace {
public:
    constexpr StateSpace() = default;
    constexpr StateSpace(int m, int n) : m_(m), n_(n) {}

    constexpr int m() const noexcept { return m_; }
    constexpr int n() const noexcept { return n_; }

    constexpr std::size_t size() const noexcept {
        return 2 * static_cast<std::size_t>(m_ + 1) * static_cast<std::size_t>(n_ + 1);
    }

    constexpr bool contains(const State& s) const noexcept {
        return (s.h == 0 || s.h == 1) && s.phi >= 0 && s.phi <= m_ && s.tau >= 0 && s.tau <= n_;
    }

    constexpr std::size_t index(const State& s) const noexcept {
        return (static_cast<std::size_t>(s.h) * static_cast<std::size_t>(m_ + 1) +
                static_cast<std::size_t>(s.phi)) *
                   static_cast<std::size_t>(n_ + 1) +
               static_cast<std::size_t>(s.tau);
    }

    constexpr State at(std::size_t i) const noexcept {
        const auto cols = static_cast<std::size_t>(n_ + 1);
        const auto rows = static_cast<std::size_t>(m_ + 1);
        return State{static_cast<int>(i / (rows * cols)), static_cast<int>((i / cols) % rows),
                     static_cast<int>(i % cols)};
    }

    /// Death by toxicity or by tumor: the whole state is frozen.
    constexpr bool is_death(const State& s) const noexcept { return s.phi == m_ || s.tau == n_; }

    /// Death or remission (tau = 0).
    constexpr bool is_absorbing(const State& s) const noexcept { return is_death(s) || s.tau == 0; }

    constexpr State worst(int h = 1) const noexcept { return State{h, m_, n_}; }

    /// Throws DomainError naming the offending coordinate.
    void require(const State& s) const;

    friend constexpr bool operator==(const StateSpace&, const StateSpace&) = default;

private:
    int m_ = 0;
    int n_ = 0;
};

} // namespace oncodp
