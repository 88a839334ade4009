#include "shuttlesim/exchange.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace shuttlesim::exchange {

double j_exponential(double v_b3_mV, double j0_hz, double v0_mV) {
    if (v0_mV <= 0.0) throw std::invalid_argument("j_exponential: v0 must be > 0");
    return j0_hz * std::exp(v_b3_mV / v0_mV);
}

ExchangeModel ExchangeModel::from_table(std::vector<double> c, std::vector<double> j_hz) {
    for (double j : j_hz)
        if (j < 0.0) throw std::invalid_argument("ExchangeModel: J must be >= 0");
    ExchangeModel m;
    m.kind_ = ModelKind::TableInterpolated;
    m.table_ = MonotoneCubic(std::move(c), std::move(j_hz));
    return m;
}

ExchangeModel ExchangeModel::from_table_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open exchange table: " + path);
    std::vector<double> c, j;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) { header = false; continue; }
        std::stringstream ss(line);
        std::string a, b;
        std::getline(ss, a, ',');
        std::getline(ss, b, ',');
        c.push_back(std::stod(a));
        j.push_back(std::stod(b));
    }
    return from_table(std::move(c), std::move(j));
}

ExchangeModel ExchangeModel::saturating(double j_max_hz, double c0, double w) {
    if (j_max_hz < 0.0 || w <= 0.0) throw std::invalid_argument("ExchangeModel: bad logistic params");
    ExchangeModel m;
    m.kind_ = ModelKind::Saturating;
    m.j_max_ = j_max_hz;
    m.c0_ = c0;
    m.w_ = w;
    return m;
}

double ExchangeModel::j_at_cycle(double c) const {
    if (kind_ == ModelKind::Saturating)
        return j_max_ / (1.0 + std::exp(-(c - c0_) / w_));
    return std::max(0.0, table_(c));
}

double ExchangeModel::c_min() const {
    return kind_ == ModelKind::Saturating ? -1e300 : table_.x_min();
}
double ExchangeModel::c_max() const {
    return kind_ == ModelKind::Saturating ? 1e300 : table_.x_max();
}

CoherenceTable::CoherenceTable(std::vector<double> c, std::array<std::vector<double>, 4> t2_us) {
    for (const auto& col : t2_us)
        for (double t : col)
            if (t <= 0.0) throw std::invalid_argument("CoherenceTable: T2* must be > 0");
    for (int k = 0; k < 4; ++k) cols_[k] = MonotoneCubic(c, t2_us[k]);
}

CoherenceTable CoherenceTable::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open coherence table: " + path);
    std::vector<double> c;
    std::array<std::vector<double>, 4> cols;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) { header = false; continue; }
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() != 5) throw std::runtime_error("coherence table row needs 5 columns");
        c.push_back(vals[0]);
        for (int k = 0; k < 4; ++k) cols[k].push_back(vals[k + 1]);
    }
    return CoherenceTable(std::move(c), std::move(cols));
}

double CoherenceTable::t2_at_cycle(double c, T2Column which) const {
    return cols_[static_cast<int>(which)](c);
}

ExpFit fit_exponential(const std::vector<double>& v_mV, const std::vector<double>& j_hz) {
    // linear least squares on ln J = ln J0 + v / v0
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = 0; i < v_mV.size(); ++i) {
        if (j_hz[i] <= 0.0) continue;
        double y = std::log(j_hz[i]);
        sx += v_mV[i];
        sy += y;
        sxx += v_mV[i] * v_mV[i];
        sxy += v_mV[i] * y;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("fit_exponential: need >= 2 points with J > 0");
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_exponential: degenerate abscissae");
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;
    if (slope <= 0.0) throw std::runtime_error("fit_exponential: non-positive slope, not exponential growth");
    return {std::exp(intercept), 1.0 / slope};
}

}  // namespace shuttlesim::exchange
