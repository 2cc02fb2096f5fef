#include "quadprop/scenario.hpp"

#include <cmath>
#include <memory>
#include <utility>

namespace quadprop {

namespace {

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

/// Uniformly sampled columns with local cubic interpolation and step-h
/// finite-difference first derivatives.
class Table {
  public:
    Table(CsvTable csv) {
        auto tcol = csv.column("t");
        std::size_t n = csv.rows.size();
        if (n < 4) throw ConfigError("tabulated scenario needs at least 4 rows");
        t_.reserve(n);
        for (const auto& r : csv.rows) t_.push_back(r[tcol]);
        h_ = (t_.back() - t_.front()) / static_cast<double>(n - 1);
        if (!(h_ > 0)) throw ConfigError("tabulated time column must increase");
        for (std::size_t i = 1; i < n; ++i) {
            double step = t_[i] - t_[i - 1];
            if (std::abs(step - h_) > 1e-9 * std::max(1.0, std::abs(h_)))
                throw ConfigError("tabulated time column must be uniformly spaced");
        }
        for (const char* name : {"M", "w2", "F", "a", "b", "f"}) {
            auto c = csv.column(name);
            std::vector<double> col;
            col.reserve(n);
            for (const auto& r : csv.rows) col.push_back(r[c]);
            cols_.push_back(std::move(col));
        }
    }

    double t_min() const { return t_.front(); }
    double t_max() const { return t_.back(); }
    double step() const { return h_; }

    double value(std::size_t col, double t) const {
        const auto& y = cols_[col];
        std::size_t n = t_.size();
        double s = (t - t_.front()) / h_;
        // 4-point stencil centered on the containing cell
        long i = static_cast<long>(std::floor(s));
        i = std::max(1L, std::min(static_cast<long>(n) - 3, i));
        double x = s - static_cast<double>(i);  // in [-.., ..], 0 at node i
        double ym1 = y[i - 1], y0 = y[i], y1 = y[i + 1], y2 = y[i + 2];
        // Lagrange cubic through nodes -1, 0, 1, 2 in units of h
        double c0 = -x * (x - 1) * (x - 2) / 6.0;
        double c1 = (x + 1) * (x - 1) * (x - 2) / 2.0;
        double c2 = -(x + 1) * x * (x - 2) / 2.0;
        double c3 = (x + 1) * x * (x - 1) / 6.0;
        return c0 * ym1 + c1 * y0 + c2 * y1 + c3 * y2;
    }

    double deriv(std::size_t col, double t) const {
        double lo = t_min(), hi = t_max();
        if (t - h_ >= lo && t + h_ <= hi)
            return (value(col, t + h_) - value(col, t - h_)) / (2 * h_);
        if (t + 2 * h_ <= hi)  // forward one-sided, second order
            return (-3 * value(col, t) + 4 * value(col, t + h_) - value(col, t + 2 * h_)) /
                   (2 * h_);
        return (3 * value(col, t) - 4 * value(col, t - h_) + value(col, t - 2 * h_)) / (2 * h_);
    }

  private:
    std::vector<double> t_;
    std::vector<std::vector<double>> cols_;
    double h_ = 0;
};

}  // namespace

Scenario Scenario::custom(std::string name, Functions fns, double hbar, double t_min,
                          double t_max) {
    if (!(hbar > 0)) throw ValidationError("hbar must be positive");
    if (!(t_min < t_max)) throw ValidationError("empty scenario interval");
    if (!fns.M || !fns.w2) throw ValidationError("scenario needs M(t) and w2(t)");
    Scenario s;
    s.name_ = std::move(name);
    s.fns_ = std::move(fns);
    s.hbar_ = hbar;
    s.t_min_ = t_min;
    s.t_max_ = t_max;
    return s;
}

Scenario Scenario::preset(const std::string& name, const std::map<std::string, double>& p,
                          double hbar, double t_min, double t_max) {
    Functions fns;
    double m0 = param(p, "m0", 1.0);
    double w0 = param(p, "w0", 1.0);
    if (!(m0 > 0)) throw ValidationError("m0 must be positive");
    if (name == "sho") {
        fns.M = [m0](double) { return m0; };
        fns.w2 = [w0](double) { return w0 * w0; };
    } else if (name == "free") {
        fns.M = [m0](double) { return m0; };
        fns.w2 = [](double) { return 0.0; };
    } else if (name == "caldirola-kanai") {
        double gamma = param(p, "gamma", 0.2);
        fns.M = [m0, gamma](double t) { return m0 * std::exp(gamma * t); };
        fns.Mdot = [m0, gamma](double t) { return m0 * gamma * std::exp(gamma * t); };
        fns.w2 = [w0](double) { return w0 * w0; };
    } else if (name == "paul-trap") {
        double eps = param(p, "eps", 0.2);
        double nu = param(p, "nu", 2.5);
        fns.M = [m0](double) { return m0; };
        fns.w2 = [w0, eps, nu](double t) { return w0 * w0 * (1 + eps * std::cos(nu * t)); };
    } else if (name == "driven-sho") {
        double F0 = param(p, "F0", 1.0);
        double nu = param(p, "nu", 2.0);
        fns.M = [m0](double) { return m0; };
        fns.w2 = [w0](double) { return w0 * w0; };
        fns.F = [F0, nu](double t) { return F0 * std::sin(nu * t); };
    } else if (name == "full-quadratic") {
        double gamma = param(p, "gamma", 0.1);
        double eps = param(p, "eps", 0.2);
        double nu = param(p, "nu", 1.3);
        double F0 = param(p, "F0", 0.5);
        double nuF = param(p, "nuF", 2.0);
        double a0 = param(p, "a0", 0.15);
        double nua = param(p, "nua", 0.9);
        double b0 = param(p, "b0", 0.3);
        double nub = param(p, "nub", 1.1);
        double f0 = param(p, "f0", 0.4);
        double nuf = param(p, "nuf", 0.7);
        fns.M = [m0, gamma](double t) { return m0 * std::exp(gamma * t); };
        fns.Mdot = [m0, gamma](double t) { return m0 * gamma * std::exp(gamma * t); };
        fns.w2 = [w0, eps, nu](double t) { return w0 * w0 * (1 + eps * std::cos(nu * t)); };
        fns.F = [F0, nuF](double t) { return F0 * std::sin(nuF * t); };
        fns.a = [a0, nua](double t) { return a0 * std::cos(nua * t); };
        fns.adot = [a0, nua](double t) { return -a0 * nua * std::sin(nua * t); };
        fns.b = [b0, nub](double t) { return b0 * std::sin(nub * t); };
        fns.bdot = [b0, nub](double t) { return b0 * nub * std::cos(nub * t); };
        fns.f = [f0, nuf](double t) { return f0 * std::cos(nuf * t); };
    } else {
        throw ConfigError("unknown preset: " + name);
    }
    return custom(name, std::move(fns), hbar, t_min, t_max);
}

Scenario Scenario::tabulated(const std::string& csv_path, double hbar) {
    auto table = std::make_shared<Table>(read_csv(csv_path));
    Functions fns;
    fns.M = [table](double t) { return table->value(0, t); };
    fns.Mdot = [table](double t) { return table->deriv(0, t); };
    fns.w2 = [table](double t) { return table->value(1, t); };
    fns.F = [table](double t) { return table->value(2, t); };
    fns.a = [table](double t) { return table->value(3, t); };
    fns.adot = [table](double t) { return table->deriv(3, t); };
    fns.b = [table](double t) { return table->value(4, t); };
    fns.bdot = [table](double t) { return table->deriv(4, t); };
    fns.f = [table](double t) { return table->value(5, t); };
    return custom("tabulated", std::move(fns), hbar, table->t_min(), table->t_max());
}

Scenario Scenario::from_config(const KeyValueFile& kv) {
    std::string preset_name = kv.get_string("preset");
    double hbar = kv.get_double("hbar", 1.0);
    if (preset_name == "tabulated") {
        Scenario s = tabulated(kv.get_string("table_path"), hbar);
        if (kv.has("interval")) {
            auto [a, b] = kv.get_interval("interval");
            if (a < s.t_min() - 1e-12 || b > s.t_max() + 1e-12 || !(a < b))
                throw ConfigError("interval not covered by table");
            s.t_min_ = a;
            s.t_max_ = b;
        }
        return s;
    }
    double t0 = 0.0, t1 = 10.0;
    if (kv.has("interval")) {
        auto [a, b] = kv.get_interval("interval");
        t0 = a;
        t1 = b;
    }
    static const char* known[] = {"m0",  "w0",  "gamma", "eps", "nu", "F0", "nuF",
                                  "a0",  "nua", "b0",    "nub", "f0", "nuf"};
    std::map<std::string, double> params;
    for (const char* k : known)
        if (kv.has(k)) params[k] = kv.get_double(k);
    return preset(preset_name, params, hbar, t0, t1);
}

void Scenario::validate_time(double t) const {
    double slack = 1e-9 * (t_max_ - t_min_);
    if (t < t_min_ - slack || t > t_max_ + slack)
        throw DomainError("time " + format_double(t) + " outside scenario interval [" +
                          format_double(t_min_) + ", " + format_double(t_max_) + "]");
}

Coeffs Scenario::evaluate(double t) const {
    validate_time(t);
    Coeffs c;
    c.M = fns_.M(t);
    if (!(c.M > 0)) throw ValidationError("M(t) must stay positive, got " + format_double(c.M) +
                                          " at t = " + format_double(t));
    c.Mdot = fns_.Mdot ? fns_.Mdot(t) : 0.0;
    c.w2 = fns_.w2(t);
    c.F = fns_.F ? fns_.F(t) : 0.0;
    c.a = fns_.a ? fns_.a(t) : 0.0;
    c.adot = fns_.adot ? fns_.adot(t) : 0.0;
    c.b = fns_.b ? fns_.b(t) : 0.0;
    c.bdot = fns_.bdot ? fns_.bdot(t) : 0.0;
    c.f = fns_.f ? fns_.f(t) : 0.0;
    return c;
}

DerivedCoefficients Scenario::derived(double t) const {
    Coeffs co = evaluate(t);
    DerivedCoefficients dc;
    dc.c = co.w2 + 4 * co.a * co.a - 2 * co.adot - 2 * (co.Mdot / co.M) * co.a;
    dc.d = 2 * co.a * co.b - co.bdot - co.F;
    return dc;
}

}  // namespace quadprop
