#include <boost/math/quadrature/tanh_sinh.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "finnet/exact_avg.hpp"
#include "finnet/experiment.hpp"
#include "finnet/outage.hpp"
#include "finnet/spatial.hpp"
#include "support.hpp"

using namespace finnet;
using finnet::testing::integer_in;
using finnet::testing::relative_error;
using finnet::testing::test_stream;
using finnet::testing::uniform_in;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

void note(Outcome& out, bool ok, const std::string& what) {
    if (!ok) {
        out.pass = false;
        if (!out.detail.empty()) out.detail += "; ";
        out.detail += what;
    }
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

std::size_t column(const ResultTable& t, const std::string& name) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (t.columns[c] == name) return c;
    }
    throw std::runtime_error("missing column " + name);
}

// table-1 reference rows in (M, alpha, G) order: simulated, then analytic.
constexpr double kTableOneSim[] = {1.730e-1, 1.874e-3, 1.303e-1, 3.010e-3,
                                   3.572e-1, 3.130e-3, 2.518e-1, 5.429e-3};
constexpr double kTableOneTheory[] = {1.711e-1, 1.906e-3, 1.290e-1, 3.118e-3,
                                      3.624e-1, 3.229e-3, 2.574e-1, 5.671e-3};

Outcome oracle_agreement() {
    ExperimentConfig cfg = preset_config("fig-a");
    cfg.trials = 1'000'000;
    const ResultTable t = run_experiment(cfg);
    Outcome out;
    double worst = 0.0;
    for (const char* series : {"rayleigh", "nakagami", "mixed"}) {
        const std::size_t ce = column(t, std::string("eps_") + series);
        const std::size_t co = column(t, std::string("oracle_") + series);
        for (const auto& row : t.rows) {
            const double hat = row[co];
            const double bound = 4.0 * std::sqrt(hat * (1.0 - hat) / 1e6);
            const double gap = std::abs(row[ce] - hat);
            worst = std::max(worst, bound > 0.0 ? gap / bound : (gap > 0.0 ? 1e9 : 0.0));
            note(out, gap <= bound,
                 series + fmt(" at %.0f dB: closed %.6g vs oracle %.6g", row[0], row[ce], hat));
        }
    }
    if (out.pass) out.detail = fmt("18 points, worst gap %.2f of the 4-SE bound", worst);
    return out;
}

Outcome table_one(const ResultTable& t, bool simulated) {
    Outcome out;
    const std::size_t c = column(t, simulated ? "eps_sim" : "eps_theory");
    const double tol = simulated ? 0.07 : 0.005;
    double worst = 0.0;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const double ref = simulated ? kTableOneSim[r] : kTableOneTheory[r];
        const double rel = relative_error(t.rows[r][c], ref);
        worst = std::max(worst, rel);
        note(out, rel <= tol, fmt("M=%.0f alpha=%.0f G=%.0f", t.rows[r][0], t.rows[r][1], t.rows[r][2]) +
                                  fmt(": %.5g vs %.4g", t.rows[r][c], ref));
    }
    note(out, t.rows.size() == 8, "expected eight rows");
    if (out.pass) out.detail = fmt("worst relative deviation %.2f%%", 100.0 * worst);
    return out;
}

Outcome table_two() {
    ExperimentConfig cfg = preset_config("table-2");
    const ResultTable t = run_experiment(cfg);
    struct Spot {
        double m, alpha, g, sigma, center, perimeter;
    };
    const Spot spots[] = {{30, 3, 1, 0, 0.1528, 0.0608}, {60, 4, 32, 8, 0.0184, 0.0117}};
    Outcome out;
    double worst = 0.0;
    for (const auto& row : t.rows) {
        note(out, row[5] < row[4], fmt("perimeter %.4g not below center %.4g", row[5], row[4]));
        for (const auto& s : spots) {
            if (row[0] != s.m || row[1] != s.alpha || row[2] != s.g || row[3] != s.sigma) continue;
            const double rc = relative_error(row[4], s.center);
            const double rp = relative_error(row[5], s.perimeter);
            worst = std::max({worst, rc, rp});
            note(out, rc <= 0.10, fmt("center %.4g vs %.4g", row[4], s.center));
            note(out, rp <= 0.10, fmt("perimeter %.4g vs %.4g", row[5], s.perimeter));
        }
    }
    note(out, t.rows.size() == 16, "expected sixteen rows");
    if (out.pass) out.detail = fmt("spot checks within %.1f%%, perimeter below center in all 16 rows", 100.0 * worst);
    return out;
}

Outcome rayleigh_identity() {
    Outcome out;
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 1000; ++k) {
        RandomStream rng = test_stream(100000 + k);
        const std::size_t count = integer_in(rng, 0, 50);
        ChannelParams ch = finnet::testing::random_channel(rng, count);
        ch.m0 = 1;
        for (auto& m : ch.m) m = 1.0;
        const NormalizedPowers w = finnet::testing::random_powers(rng, count, ch.alpha);
        const double z = uniform_in(rng, 0.0, 2.0) * w.reference();
        const double gap = std::abs(ccdf_conditional(z, w, ch) - ccdf_rayleigh(z, w, ch));
        worst = std::max(worst, gap);
    }
    note(out, worst <= 1e-12, fmt("max gap %.3g", worst));
    if (out.pass) out.detail = fmt("1000 instances, max absolute gap %.2g", worst);
    return out;
}

Outcome closed_vs_quadrature() {
    Outcome out;
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 200; ++k) {
        RandomStream rng = test_stream(200000 + k);
        const std::size_t count = integer_in(rng, 1, 10);
        AnnulusAverageInputs in;
        in.channel = finnet::testing::random_channel(rng, count);
        in.channel.alpha = uniform_in(rng, 2.0, 5.0);
        in.channel.spreading_gain = uniform01(rng) < 0.5 ? 1.0 : 32.0;
        in.channel.chip_factor = default_chip_factor(in.channel.spreading_gain);
        const double z = uniform_in(rng, 0.0, 1.0);
        worst = std::max(worst, relative_error(averaged_ccdf_closed(z, in), averaged_ccdf_quadrature(z, in)));
    }
    note(out, worst <= 1e-9, fmt("max relative gap %.3g", worst));
    if (out.pass) out.detail = fmt("200 configurations, max relative gap %.2g", worst);
    return out;
}

double euler_2f1(double a, double b, double c, double x) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto f = [&](double t, double xc) {
        const double tc = xc > 0.0 ? xc : 1.0 - t;
        return std::exp((b - 1.0) * std::log(t) + (c - b - 1.0) * std::log(tc) - a * std::log1p(-x * t));
    };
    return std::exp(std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b)) * integrator.integrate(f, 0.0, 1.0, 1e-14);
}

Outcome hypergeometric() {
    Outcome out;
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 100; ++k) {
        RandomStream rng = test_stream(300000 + k);
        const double a = uniform_in(rng, 0.0, 10.0);
        const double b = uniform_in(rng, 0.2, 5.0);
        const double c = b + uniform_in(rng, 0.2, 3.0);
        const double x = -uniform_in(rng, 0.0, 100.0);
        worst = std::max(worst, relative_error(gauss_2f1(a, b, c, x), euler_2f1(a, b, c, x)));
    }
    note(out, worst <= 1e-9, fmt("max relative gap to the Euler integral %.3g", worst));
    const double at_zero = std::abs(gauss_2f1(2.5, 1.5, 3.0, 0.0) - 1.0);
    const double ln2 = std::abs(gauss_2f1(1.0, 1.0, 2.0, -1.0) - std::numbers::ln2);
    note(out, at_zero <= 1e-12, fmt("2F1 at x=0 off by %.3g", at_zero));
    note(out, ln2 <= 1e-12, fmt("2F1(1,1;2;-1) off by %.3g", ln2));
    if (out.pass) out.detail = fmt("100 sets, max relative gap %.2g; identity errors %.1g and %.1g", worst, at_zero, ln2);
    return out;
}

Outcome qualitative() {
    Outcome out;
    ExperimentConfig f = preset_config("fig-f");
    f.m_values = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    const ResultTable tf = run_experiment(f);
    for (std::size_t c = 1; c < tf.columns.size(); ++c) {
        for (std::size_t r = 1; r < tf.rows.size(); ++r) {
            note(out, tf.rows[r][c] >= tf.rows[r - 1][c], tf.columns[c] + fmt(" drops at M=%.0f", tf.rows[r][0]));
        }
    }
    const std::size_t r50 = 4;
    const double by_gain[] = {tf.rows[r50][column(tf, "eps_mixed")], tf.rows[r50][column(tf, "eps_mixed_G8")],
                              tf.rows[r50][column(tf, "eps_mixed_G32")], tf.rows[r50][column(tf, "eps_mixed_G100")]};
    for (int k = 1; k < 4; ++k) note(out, by_gain[k] < by_gain[k - 1], fmt("outage at M=50 not decreasing in G (%d)", k));

    ExperimentConfig g = preset_config("fig-g");
    g.m_values = {50};
    const ResultTable tg = run_experiment(g);
    const double cap1 = tg.rows[0][column(tg, "capacity_mixed")];
    const double cap32 = tg.rows[0][column(tg, "capacity_mixed_G32")];
    note(out, cap32 > cap1, fmt("capacity G=32 %.4g not above G=1 %.4g", cap32, cap1));

    ExperimentConfig d = preset_config("fig-d");
    std::vector<double> widths;
    for (double gain : {1.0, 8.0, 32.0, 100.0}) {
        ExperimentConfig s = d;
        s.m_i = 1.0;
        s.spreading_gain = gain;
        const double grid[] = {s.unit_snr(s.gamma_db.front())};
        const SpatialAverageResult avg = average_outage(make_spatial(s), grid);
        const auto& eps = avg.per_realization_outage.front();
        widths.push_back(empirical_quantile(eps, 0.9) - empirical_quantile(eps, 0.1));
    }
    for (std::size_t k = 1; k < widths.size(); ++k) {
        note(out, widths[k] < widths[k - 1], fmt("10-90%% width does not shrink at step %.0f", static_cast<double>(k)));
    }
    if (out.pass) {
        out.detail = fmt("M=50 outage G1/G8/G32/G100 = %.3g/%.3g/%.3g", by_gain[0], by_gain[1], by_gain[2]) +
                     fmt("/%.3g; capacity G32 %.4g > G1 %.4g", by_gain[3], cap32, cap1) +
                     fmt("; widths %.3g, %.3g, %.3g", widths[0], widths[1], widths[2]) + fmt(", %.3g", widths[3]);
    }
    return out;
}

Outcome determinism() {
    Outcome out;
    for (const auto& name : preset_names()) {
        ExperimentConfig cfg = preset_config(name);
        cfg.realizations = 300;
        cfg.trials = 20000;
        if (!cfg.m_values.empty()) cfg.m_values = {5, 25};
        if (name == "custom") cfg.num_interferers = 10;
        cfg.workers = 1;
        const std::string first = to_csv(run_experiment(cfg));
        cfg.workers = 0;
        const std::string second = to_csv(run_experiment(cfg));
        note(out, first == second, name + " differs between reruns");
    }
    if (out.pass) out.detail = "all presets byte-identical across reruns and worker counts";
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    ResultTable table_one_result;
    auto table_one_cached = [&]() -> const ResultTable& {
        if (table_one_result.rows.empty()) table_one_result = run_experiment(preset_config("table-1"));
        return table_one_result;
    };
    const std::vector<Criterion> criteria{
        {1, "closed form vs fading oracle", oracle_agreement},
        {2, "annulus average vs reference analytic values", [&] { return table_one(table_one_cached(), false); }},
        {3, "annulus Monte Carlo vs reference simulated values", [&] { return table_one(table_one_cached(), true); }},
        {4, "center vs perimeter receiver", table_two},
        {5, "Rayleigh specialization", rayleigh_identity},
        {6, "annulus closed form vs quadrature", closed_vs_quadrature},
        {7, "hypergeometric function", hypergeometric},
        {8, "qualitative trends in M, G and capacity", qualitative},
        {9, "determinism", determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
