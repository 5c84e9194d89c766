#include <doctest.h>

#include <cmath>
#include <random>

#include "agsim/circuit.hpp"

using namespace agsim;
namespace ct = agsim::constants;

namespace {

SquidArrayParams macklin_params() {
    // I_c = 5 uA, C_0 = 1 fF JTWPA-scale values.
    return {5e-6, 1e-15, 5e-17, 1e-6, 1024};
}

} // namespace

TEST_CASE("physical constants satisfy their defining identities") {
    CHECK(std::abs(ct::flux_quantum - ct::planck / (2.0 * ct::electron_charge)) <
          1e-12 * ct::flux_quantum);
    CHECK(std::abs(ct::von_klitzing - ct::planck / (ct::electron_charge * ct::electron_charge)) <
          1e-12 * ct::von_klitzing);
    CHECK(ct::von_klitzing == doctest::Approx(25812.8074593045).epsilon(1e-10));
}

TEST_CASE("dispersion endpoints and long-wavelength limit") {
    const auto p = macklin_params();
    CHECK(dispersion_omega(0.0, p) == 0.0);

    const double cutoff = 2.0 / std::sqrt(p.squid_inductance() * p.ground_capacitance);
    CHECK(dispersion_omega(ct::pi / p.cell_length, p) == doctest::Approx(cutoff).epsilon(1e-14));
    // The cutoff equals 2 c0 / a.
    CHECK(cutoff == doctest::Approx(2.0 * zero_flux_speed(p) / p.cell_length).epsilon(1e-12));

    const double k = 0.01 / p.cell_length;
    const double ratio = dispersion_omega(k, p) / (zero_flux_speed(p) * k);
    CHECK(ratio > 1.0 - 1e-4);
    CHECK(ratio <= 1.0);

    SquidArrayParams bad = p;
    bad.critical_current = -1.0;
    CHECK_THROWS_AS(dispersion_omega(1.0, bad), domain_error);
}

TEST_CASE("effective inductance per length") {
    const auto p = macklin_params();
    const double base = ct::flux_quantum / (4.0 * ct::pi * p.critical_current * p.cell_length);
    CHECK(effective_inductance_per_length(0.0, p) == doctest::Approx(base).epsilon(1e-14));
    // sec(pi/5) = sqrt(5) - 1.
    CHECK(effective_inductance_per_length(0.2, p) / base ==
          doctest::Approx(std::sqrt(5.0) - 1.0).epsilon(1e-12));
    CHECK_THROWS_AS(effective_inductance_per_length(0.5, p), singular_bias_error);

    // Strictly increasing in |flux|.
    double prev = effective_inductance_per_length(0.0, p);
    for (double f = 0.05; f < 0.5; f += 0.05) {
        const double cur = effective_inductance_per_length(f, p);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("phase speed against the flux bias") {
    const auto p = macklin_params();
    const double c0 = zero_flux_speed(p);
    CHECK(phase_speed(0.0, p) == doctest::Approx(c0).epsilon(1e-14));
    CHECK(phase_speed_fraction(0.2) == doctest::Approx(0.8995).epsilon(5.6e-5));
    CHECK(phase_speed_fraction(0.4999) < 0.03);
    CHECK(phase_speed_fraction(0.4999) > 0.0);
    CHECK_THROWS_AS(phase_speed_fraction(0.5), singular_bias_error);

    // Composition identity against the inductance route.
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> flux(0.0, 0.49);
    for (int i = 0; i < 200; ++i) {
        const double f = flux(rng);
        const double via_l = 1.0 / std::sqrt(effective_inductance_per_length(f, p) *
                                             p.ground_capacitance / p.cell_length);
        CHECK(phase_speed(f, p) == doctest::Approx(via_l).epsilon(1e-12));
    }
    // Monotone decreasing in |flux|.
    for (int i = 0; i < 200; ++i) {
        const double a = flux(rng), b = flux(rng);
        if (std::abs(a) == std::abs(b)) continue;
        const double lo = std::min(std::abs(a), std::abs(b));
        const double hi = std::max(std::abs(a), std::abs(b));
        CHECK(phase_speed_fraction(hi) < phase_speed_fraction(lo));
    }
}

TEST_CASE("zero-flux speed value and scalings") {
    auto p = macklin_params();
    // Direct constant arithmetic: a sqrt(4 pi I_c / (Phi0 C_0)).
    const double expected =
        1e-6 * std::sqrt(4.0 * ct::pi * 5e-6 / (2.0678338484619295e-15 * 1e-15));
    CHECK(zero_flux_speed(p) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(zero_flux_speed(p) == doctest::Approx(5.5122907178e6).epsilon(1e-9));

    auto doubled = p;
    doubled.cell_length *= 2.0;
    CHECK(zero_flux_speed(doubled) == doctest::Approx(2.0 * zero_flux_speed(p)).epsilon(1e-14));

    const double c0 = zero_flux_speed(p);
    const double identity = c0 * c0 * ct::flux_quantum * p.ground_capacitance /
                            (4.0 * ct::pi * p.critical_current * p.cell_length * p.cell_length);
    CHECK(identity == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("flux profile shape and ramp calibration") {
    FluxProfile prof{0.2, 0.95, 5.0, 0.0, 100.0};
    prof.validate();
    // Monotone decreasing across the ramp, correct asymptotes.
    CHECK(prof.flux_fraction(-1e3, 0.0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(prof.flux_fraction(1e3, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    double prev = prof.flux_fraction(0.0, 0.0);
    for (double x = 1.0; x <= 200.0; x += 1.0) {
        const double cur = prof.flux_fraction(x, 0.0);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }
    FluxProfile bad = prof;
    bad.amplitude = 0.45;
    bad.floor = 0.1;
    CHECK_THROWS_AS(bad.validate(), singular_bias_error);

    // Calibrated ramp: speed profile crosses its full height over 10 cells.
    const double w = ramp_width_for_speed_transition(0.2, 0.0, 10.0);
    CHECK(w == doctest::Approx(5.9100576).epsilon(1e-4));
    SpeedProfile sp{FluxProfile{0.2, 0.95, w, 0.0, 0.0}, macklin_params()};
    double steepest = 0.0;
    for (double x = -40.0; x <= 40.0; x += 0.01)
        steepest = std::max(steepest, std::abs(sp.gradient_fraction(x, 0.0)));
    const double chord = (phase_speed_fraction(0.0) - phase_speed_fraction(0.2)) / steepest;
    CHECK(chord == doctest::Approx(10.0).epsilon(1e-3));

    // Analytic gradient matches the central difference.
    CHECK(sp.gradient_fraction(2.0, 1.0) ==
          doctest::Approx(sp.gradient_fraction_fd(2.0, 1.0)).epsilon(1e-5));
}

TEST_CASE("horizon location") {
    const auto p = macklin_params();
    const double w = ramp_width_for_speed_transition(0.2, 0.0, 10.0);
    FluxProfile prof{0.2, 0.95, w, 0.0, 100.0};

    const auto xh = find_horizon(prof, p, 0.0);
    REQUIRE(xh.has_value());
    SpeedProfile sp{prof, p};
    CHECK(std::abs(sp.speed_fraction(*xh, 0.0) - 0.95) < 1e-12);
    CHECK(std::abs(*xh - 100.0) < 5.0 * w);

    // Horizon propagates rigidly with the front.
    const auto xh_later = find_horizon(prof, p, 50.0);
    REQUIRE(xh_later.has_value());
    CHECK(*xh_later - *xh == doctest::Approx(0.95 * 50.0).epsilon(1e-9));

    FluxProfile flat{0.0, 0.5, w, 0.0, 100.0};
    CHECK(!find_horizon(flat, p, 0.0).has_value());

    FluxProfile slow = prof;
    slow.front_speed = 0.85; // below the behind-speed 0.8995
    CHECK(!find_horizon(slow, p, 0.0).has_value());
}

TEST_CASE("effective metric components") {
    const auto p = macklin_params();
    FluxProfile flat{0.0, 0.0, 1.0, 0.0, 0.0};
    const auto mink = effective_metric_at(5.0, flat, p, 0.0);
    CHECK(mink.g_tt == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(mink.g_tx == 0.0);
    CHECK(mink.g_xx == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mink.determinant == doctest::Approx(-1.0).epsilon(1e-14));

    const double w = ramp_width_for_speed_transition(0.2, 0.0, 10.0);
    FluxProfile prof{0.2, 0.95, w, 0.0, 100.0};
    const auto xh = find_horizon(prof, p, 0.0);
    REQUIRE(xh.has_value());
    const auto at_h = effective_metric_at(*xh, prof, p, 0.95);
    CHECK(std::abs(at_h.g_xx) < 1e-12);
    CHECK(at_h.determinant == doctest::Approx(-1.0).epsilon(1e-12));

    const auto behind = effective_metric_at(*xh - 30.0 * w, prof, p, 0.95);
    CHECK(behind.g_xx < 0.0);
    const auto ahead = effective_metric_at(*xh + 30.0 * w, prof, p, 0.95);
    CHECK(ahead.g_xx > 0.0);
}

TEST_CASE("hawking temperature and the circuit estimate") {
    const auto p = macklin_params();
    CHECK(hawking_temperature(0.0) == 0.0);
    CHECK_THROWS_AS(hawking_temperature(std::nan("")), domain_error);

    const double estimate = hawking_estimate(p);
    CHECK(estimate == doctest::Approx(0.0670108496).epsilon(1e-8));
    CHECK(estimate > 0.060);
    CHECK(estimate < 0.075);

    // The estimate equals the temperature formula composed with a gradient of
    // 0.01 c0 / a.
    const double c0 = zero_flux_speed(p);
    const double composed = hawking_temperature(0.01 * c0 / p.cell_length);
    CHECK(std::abs(composed - estimate) / estimate < 0.01);

    // sqrt scalings in I_c and C_0.
    auto ic2 = p;
    ic2.critical_current *= 2.0;
    CHECK(hawking_estimate(ic2) == doctest::Approx(std::sqrt(2.0) * estimate).epsilon(1e-12));
    auto c02 = p;
    c02.ground_capacitance *= 2.0;
    CHECK(hawking_estimate(c02) == doctest::Approx(estimate / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("continuum validity flag") {
    const auto p = macklin_params();
    CHECK(p.continuum_valid(50.0 * p.cell_length));
    CHECK(!p.continuum_valid(0.5 * p.cell_length));
}
