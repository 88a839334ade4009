#pragma once

#include <array>
#include <string>
#include <vector>

#include "shuttlesim/numerics.hpp"

namespace shuttlesim::exchange {

// J(v) = J_0 * exp(v / v_0), the tunnel-barrier-controlled regime
double j_exponential(double v_b3_mV, double j0_hz, double v0_mV);

enum class ModelKind { TableInterpolated, Saturating };

// Exchange coupling versus conveyor cycle. The table variant interpolates a
// measured (c, J) curve with a monotone cubic and refuses extrapolation;
// the saturating variant is a logistic J_max / (1 + exp(-(c - c0)/w)).
class ExchangeModel {
public:
    static ExchangeModel from_table(std::vector<double> c, std::vector<double> j_hz);
    static ExchangeModel from_table_csv(const std::string& path);
    static ExchangeModel saturating(double j_max_hz, double c0, double w);

    double j_at_cycle(double c) const;  // Hz, clamped at 0; throws outside the table hull
    ModelKind kind() const { return kind_; }
    double c_min() const;
    double c_max() const;

private:
    ModelKind kind_ = ModelKind::TableInterpolated;
    MonotoneCubic table_;
    double j_max_ = 0.0, c0_ = 0.0, w_ = 1.0;
};

// Rows of T2* (us) versus cycle, for each qubit conditioned on the other spin.
// Column order: Q2|Q5=0, Q2|Q5=1, Q5|Q2=0, Q5|Q2=1.
enum class T2Column { Q2_Other0 = 0, Q2_Other1 = 1, Q5_Other0 = 2, Q5_Other1 = 3 };

class CoherenceTable {
public:
    CoherenceTable(std::vector<double> c, std::array<std::vector<double>, 4> t2_us);
    static CoherenceTable from_csv(const std::string& path);

    double t2_at_cycle(double c, T2Column which) const;  // us, no extrapolation
    double c_min() const { return cols_[0].x_min(); }
    double c_max() const { return cols_[0].x_max(); }

private:
    std::array<MonotoneCubic, 4> cols_;
};

struct ExpFit {
    double j0_hz = 0.0;
    double v0_mV = 0.0;
};

// Least squares on ln J over points with J > 0.
ExpFit fit_exponential(const std::vector<double>& v_mV, const std::vector<double>& j_hz);

}  // namespace shuttlesim::exchange
