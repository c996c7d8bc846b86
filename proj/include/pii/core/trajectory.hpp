#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pii {

template <std::size_t N>
using State = std::array<double, N>;

/// Piecewise dense-output solution of an ODE.
///
/// Each accepted step stores the eight DOP853 interpolation vectors, so the
/// solution can be evaluated anywhere between the first and last node with
/// seventh-order accuracy. Evaluating exactly at a node returns the stored
/// state unchanged.
template <std::size_t N>
class Trajectory {
public:
    static constexpr int interpolation_order = 7;

    struct Step {
        double t0 = 0.0;
        double h = 0.0;
        std::array<State<N>, 8> rc{};
    };

    Trajectory() = default;

    void start(double t, const State<N>& y) {
        grid_.assign(1, t);
        states_.assign(1, y);
        steps_.clear();
    }

    void push(const Step& step, double t1, const State<N>& y1) {
        grid_.push_back(t1);
        states_.push_back(y1);
        steps_.push_back(step);
    }

    bool empty() const { return grid_.empty(); }
    std::size_t size() const { return grid_.size(); }
    const std::vector<double>& grid() const { return grid_; }
    const State<N>& state(std::size_t i) const { return states_.at(i); }
    double t_front() const { return grid_.front(); }
    double t_back() const { return grid_.back(); }
    bool decreasing() const { return grid_.size() > 1 && grid_[1] < grid_[0]; }
    double t_lo() const { return std::min(grid_.front(), grid_.back()); }
    double t_hi() const { return std::max(grid_.front(), grid_.back()); }

    bool contains(double t) const { return !grid_.empty() && t >= t_lo() && t <= t_hi(); }

    State<N> operator()(double t) const {
        if (!contains(t)) throw std::out_of_range("Trajectory: abscissa outside the integrated range");
        std::size_t i = locate(t);
        if (grid_[i] == t) return states_[i];
        if (i + 1 < grid_.size() && grid_[i + 1] == t) return states_[i + 1];
        const Step& st = steps_[i];
        const double s = (t - st.t0) / st.h, s1 = 1.0 - s;
        State<N> y;
        const auto& r = st.rc;
        for (std::size_t k = 0; k < N; ++k) {
            y[k] = r[0][k] + s * (r[1][k] + s1 * (r[2][k] + s * (r[3][k] + s1 * (r[4][k]
                   + s * (r[5][k] + s1 * (r[6][k] + s * r[7][k]))))));
        }
        return y;
    }

    double component(double t, std::size_t k) const { return (*this)(t)[k]; }

    /// Append a trajectory whose first node coincides with this one's last.
    /// The shared node keeps the state of `this`.
    void append(const Trajectory& other) {
        if (other.empty()) return;
        if (empty()) { *this = other; return; }
        if (other.grid_.front() != grid_.back())
            throw std::invalid_argument("Trajectory::append: endpoints do not match");
        if (other.size() > 1 && size() > 1 && other.decreasing() != decreasing())
            throw std::invalid_argument("Trajectory::append: direction mismatch");
        for (std::size_t i = 1; i < other.grid_.size(); ++i) {
            grid_.push_back(other.grid_[i]);
            states_.push_back(other.states_[i]);
            steps_.push_back(other.steps_[i - 1]);
        }
    }

    /// Add a constant to one component everywhere (nodes and interpolants).
    void shift_component(std::size_t k, double c) {
        for (auto& y : states_) y[k] += c;
        for (auto& st : steps_) st.rc[0][k] += c;
    }

private:
    std::size_t locate(double t) const {
        std::size_t i;
        if (decreasing()) {
            auto it = std::lower_bound(grid_.begin(), grid_.end(), t, std::greater<double>());
            i = static_cast<std::size_t>(it - grid_.begin());
        } else {
            auto it = std::lower_bound(grid_.begin(), grid_.end(), t);
            i = static_cast<std::size_t>(it - grid_.begin());
        }
        if (i >= grid_.size()) i = grid_.size() - 1;
        if (grid_[i] != t && i > 0) --i;
        if (i + 1 >= grid_.size() && i > 0) i = grid_.size() - 2;
        return i;
    }

    std::vector<double> grid_;
    std::vector<State<N>> states_;
    std::vector<Step> steps_;
};

}  // namespace pii
