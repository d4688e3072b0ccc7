#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "rfmesh/sparams.hpp"

using namespace rfmesh::sparams;

namespace {

FrequencySweep make_sweep(std::initializer_list<SweepPoint> points) {
  FrequencySweep sweep;
  sweep.points = points;
  return sweep;
}

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

TEST_CASE("parse_touchstone handles the three formats") {
  SUBCASE("MA") {
    const auto sweep = parse_touchstone("# GHz S MA R 50\n2.4 0.3162 -45\n");
    REQUIRE(sweep.points.size() == 1);
    CHECK(sweep.points[0].frequency_hz == 2.4e9);
    CHECK(std::abs(sweep.points[0].s11) == doctest::Approx(0.3162));
    CHECK(std::arg(sweep.points[0].s11) ==
          doctest::Approx(-std::numbers::pi / 4.0));
    CHECK(sweep.header.reference_impedance_ohm == 50.0);
  }
  SUBCASE("RI") {
    const auto sweep = parse_touchstone("# MHz S RI R 50\n100 0.5 0.0\n");
    REQUIRE(sweep.points.size() == 1);
    CHECK(sweep.points[0].frequency_hz == 1e8);
    CHECK(sweep.points[0].s11 == std::complex<double>(0.5, 0.0));
  }
  SUBCASE("DB") {
    const auto sweep = parse_touchstone("# GHz S DB R 50\n1.0 -20 0\n");
    REQUIRE(sweep.points.size() == 1);
    CHECK(std::abs(sweep.points[0].s11) == doctest::Approx(0.1).epsilon(1e-12));
  }
}

TEST_CASE("parse_touchstone defaults and comments") {
  SUBCASE("no option line means GHz S MA R 50") {
    const auto sweep = parse_touchstone("2.4 0.5 0\n");
    CHECK(sweep.points[0].frequency_hz == 2.4e9);
    CHECK(sweep.points[0].s11.real() == doctest::Approx(0.5));
  }
  SUBCASE("bare # keeps every default") {
    const auto sweep = parse_touchstone("#\n1.0 0.25 90\n");
    CHECK(sweep.points[0].frequency_hz == 1e9);
    CHECK(sweep.points[0].s11.imag() == doctest::Approx(0.25));
  }
  SUBCASE("option tokens are case-insensitive, defaults fill gaps") {
    const auto sweep = parse_touchstone("# mhz s ri r 75\n1 0 0.5\n");
    CHECK(sweep.header.reference_impedance_ohm == 75.0);
    CHECK(sweep.points[0].frequency_hz == 1e6);
    const auto partial = parse_touchstone("# MHz\n1 0.5 0\n");  // MA assumed
    CHECK(partial.points[0].s11.real() == doctest::Approx(0.5));
  }
  SUBCASE("comments anywhere, including trailing") {
    const auto sweep = parse_touchstone(
        "! header comment\n# GHz S MA R 50\n\n1 0.5 0 ! trailing\n! tail\n");
    CHECK(sweep.points.size() == 1);
  }
}

TEST_CASE("parse_touchstone error reporting carries line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_touchstone(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("# GHz S MA R 50\n1 2\n") == 2);             // column count
  CHECK(line_of("# GHz S MA R 50\n1 0.5 0 junk\n") == 2);    // column count
  CHECK(line_of("# GHz S XX R 50\n1 0.5 0\n") == 1);         // bad token
  CHECK(line_of("# GHz S MA R\n1 0.5 0\n") == 1);            // R without value
  CHECK(line_of("# GHz Y MA R 50\n1 0.5 0\n") == 1);         // not S
  CHECK(line_of("# GHz S MA R 50\n2 0.5 0\n1 0.5 0\n") == 3);  // non-monotonic
  CHECK(line_of("# GHz S MA R 50\n2 0.5 0\n2 0.5 0\n") == 3);  // duplicate f
  CHECK(line_of("# GHz S MA R 50\n1 abc 0\n") == 2);          // bad number
  CHECK(line_of("# GHz S MA R 50\n1 0.5 0\n# GHz S RI R 50\n") == 3);
  CHECK(line_of("# GHz S MA R 50\n! only comments\n") == 2);  // no data
  CHECK(line_of("") == 1);                                    // empty input
}

TEST_CASE("return_loss_db") {
  CHECK(return_loss_db(1.0) == 0.0);
  CHECK(return_loss_db(0.1) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(return_loss_db(0.3162) == doctest::Approx(10.0).epsilon(1e-4));
  CHECK(std::isinf(return_loss_db(0.0)));
  CHECK_THROWS_AS(return_loss_db(1.1), std::domain_error);
  CHECK_THROWS_AS(return_loss_db(-0.1), std::domain_error);
}

TEST_CASE("vswr") {
  CHECK(vswr(0.0) == 1.0);
  CHECK(vswr(1.0 / 3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(vswr(0.5) == 3.0);
  CHECK_THROWS_AS(vswr(1.0), std::domain_error);
  CHECK_THROWS_AS(vswr(1.5), std::domain_error);
}

TEST_CASE("accepted_power_fraction") {
  CHECK(accepted_power_fraction(0.0) == 1.0);
  CHECK(accepted_power_fraction(1.0) == 0.0);
  CHECK(accepted_power_fraction(0.1) == 0.99);
  CHECK_THROWS_AS(accepted_power_fraction(1.01), std::domain_error);
}

TEST_CASE("transmitted_to_reflected_ratio") {
  CHECK(transmitted_to_reflected_ratio(0.5) == 3.0);
  CHECK(transmitted_to_reflected_ratio(1.0) == 0.0);
  CHECK(transmitted_to_reflected_ratio(1.0 / std::numbers::sqrt2) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(transmitted_to_reflected_ratio(0.0), std::domain_error);
  CHECK_THROWS_AS(transmitted_to_reflected_ratio(1.2), std::domain_error);
}

TEST_CASE("metric identities hold across the passive range") {
  for (double m = 0.001; m < 1.0; m += 0.007) {
    CHECK(accepted_power_fraction(m) + m * m == 1.0);
    CHECK(close_rel(transmitted_to_reflected_ratio(m),
                    accepted_power_fraction(m) / (m * m), 1e-12));
  }
  double previous_vswr = 0.0;
  double previous_rl = std::numeric_limits<double>::infinity();
  for (double m = 0.0; m < 1.0; m += 0.007) {
    const double v = vswr(m);
    CHECK(v > previous_vswr);
    previous_vswr = v;
    if (m > 0.0) {
      const double rl = return_loss_db(m);
      CHECK(rl < previous_rl);
      previous_rl = rl;
    }
  }
}

TEST_CASE("bandwidth") {
  SUBCASE("never met") {
    const auto sweep = make_sweep(
        {{1e9, {0.5, 0.0}}, {2e9, {0.5, 0.0}}, {3e9, {0.5, 0.0}}});
    CHECK(bandwidth(sweep, 10.0).empty());
  }
  SUBCASE("always met spans the sweep") {
    const auto sweep = make_sweep(
        {{1e9, {0.01, 0.0}}, {2e9, {0.01, 0.0}}, {3e9, {0.01, 0.0}}});
    const auto bands = bandwidth(sweep, 10.0);
    REQUIRE(bands.size() == 1);
    CHECK(bands[0].f_low_hz == 1e9);
    CHECK(bands[0].f_high_hz == 3e9);
  }
  SUBCASE("edges by linear interpolation of return loss") {
    const auto sweep =
        make_sweep({{1e9, {1.0, 0.0}}, {2e9, {0.1, 0.0}}, {3e9, {1.0, 0.0}}});
    const auto bands = bandwidth(sweep, 10.0);
    REQUIRE(bands.size() == 1);
    CHECK(bands[0].f_low_hz == doctest::Approx(1.5e9).epsilon(1e-12));
    CHECK(bands[0].f_high_hz == doctest::Approx(2.5e9).epsilon(1e-12));
  }
  SUBCASE("single point") {
    CHECK(bandwidth(make_sweep({{1e9, {0.01, 0.0}}}), 10.0).size() == 1);
    CHECK(bandwidth(make_sweep({{1e9, {0.9, 0.0}}}), 10.0).empty());
  }
  SUBCASE("perfect-match sample pins the edge at its neighbour") {
    const auto sweep =
        make_sweep({{1e9, {0.9, 0.0}}, {2e9, {0.0, 0.0}}, {3e9, {0.9, 0.0}}});
    const auto bands = bandwidth(sweep, 10.0);
    REQUIRE(bands.size() == 1);
    CHECK(bands[0].f_low_hz == 1e9);
    CHECK(bands[0].f_high_hz == 3e9);
  }
  CHECK_THROWS_AS(bandwidth(make_sweep({{1e9, {0.5, 0.0}}}), 0.0),
                  std::domain_error);
}

TEST_CASE("bandwidth intervals are disjoint, sorted and contained") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> mag(0.0001, 0.9999);
  for (int round = 0; round < 50; ++round) {
    FrequencySweep sweep;
    double f = 1e9;
    for (int i = 0; i < 40; ++i) {
      sweep.points.push_back({f, {mag(rng), 0.0}});
      f += 25e6;
    }
    const auto bands = bandwidth(sweep, 10.0);
    double previous_high = sweep.points.front().frequency_hz - 1.0;
    for (const auto& band : bands) {
      CHECK(band.f_low_hz <= band.f_high_hz);
      CHECK(band.f_low_hz > previous_high);
      CHECK(band.f_low_hz >= sweep.points.front().frequency_hz);
      CHECK(band.f_high_hz <= sweep.points.back().frequency_hz);
      previous_high = band.f_high_hz;
    }
  }
}

TEST_CASE("resonant_frequency") {
  CHECK(resonant_frequency(make_sweep({{2.4e9, {0.3, 0.0}}})) == 2.4e9);
  CHECK(resonant_frequency(make_sweep({{1e9, {0.9, 0.0}},
                                       {2e9, {0.2, 0.0}},
                                       {3e9, {0.9, 0.0}}})) == 2e9);
  // tie breaks toward the lower frequency
  CHECK(resonant_frequency(make_sweep({{1e9, {0.2, 0.0}},
                                       {2e9, {0.9, 0.0}},
                                       {3e9, {0.2, 0.0}}})) == 1e9);
}

TEST_CASE("mismatch_efficiency") {
  const auto sweep =
      make_sweep({{1e9, {0.1, 0.0}}, {2e9, {0.1, 0.0}}, {3e9, {0.0, 0.0}}});
  CHECK(mismatch_efficiency(sweep, 3e9) == 1.0);
  CHECK(mismatch_efficiency(sweep, 1e9) == 0.99);
  CHECK(mismatch_efficiency(sweep, 2e9) == 0.99);
  // interpolation of a constant is the constant
  CHECK(mismatch_efficiency(sweep, 1.5e9) == doctest::Approx(0.99).epsilon(1e-12));
  CHECK_THROWS_AS(mismatch_efficiency(sweep, 0.5e9), std::out_of_range);
  CHECK_THROWS_AS(mismatch_efficiency(sweep, 3.5e9), std::out_of_range);
}

TEST_CASE("mismatch interpolation is linear in dB magnitude") {
  const auto sweep = make_sweep({{1e9, {0.1, 0.0}}, {2e9, {0.01, 0.0}}});
  // halfway in dB between -20 and -40 dB is -30 dB
  const double expected_mag = std::pow(10.0, -30.0 / 20.0);
  CHECK(mismatch_efficiency(sweep, 1.5e9) ==
        doctest::Approx(1.0 - expected_mag * expected_mag).epsilon(1e-12));
}

TEST_CASE("serialize round-trips through every format") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> mag(1e-6, 1.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                               std::numbers::pi);
  for (int round = 0; round < 30; ++round) {
    FrequencySweep sweep;
    sweep.header.reference_impedance_ohm = round % 2 ? 50.0 : 75.0;
    double f = 0.5e9;
    for (int i = 0; i < 25; ++i) {
      sweep.points.push_back({f, std::polar(mag(rng), angle(rng))});
      f *= 1.07;
    }
    for (DataFormat format : {DataFormat::kRealImag, DataFormat::kMagAngle,
                              DataFormat::kDbAngle}) {
      const auto text = serialize_touchstone(sweep, format);
      const auto reparsed = parse_touchstone(text);
      REQUIRE(reparsed.points.size() == sweep.points.size());
      CHECK(reparsed.header.reference_impedance_ohm ==
            sweep.header.reference_impedance_ohm);
      for (std::size_t i = 0; i < sweep.points.size(); ++i) {
        const auto expected = sweep.points[i].s11;
        const auto actual = reparsed.points[i].s11;
        CHECK(std::abs(actual - expected) <= 1e-9 * std::abs(expected));
        CHECK(close_rel(reparsed.points[i].frequency_hz,
                        sweep.points[i].frequency_hz, 1e-8));
      }
    }
  }
}

TEST_CASE("a perfect-match sample serializes to DB as the -400 dB floor") {
  const auto sweep = make_sweep({{1e9, {0.0, 0.0}}, {2e9, {0.5, 0.0}}});
  const auto text = serialize_touchstone(sweep, DataFormat::kDbAngle);
  CHECK(text.find("-400") != std::string::npos);
  const auto reparsed = parse_touchstone(text);
  CHECK(std::abs(reparsed.points[0].s11) <= 1e-20);
  CHECK(std::abs(reparsed.points[1].s11) ==
        doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("lossy data parses but is rejected by the metrics") {
  const auto sweep = parse_touchstone("# GHz S RI R 50\n1 1.2 0\n");
  CHECK(std::abs(sweep.points[0].s11) == doctest::Approx(1.2));
  CHECK_THROWS_AS(return_loss_db(std::abs(sweep.points[0].s11)),
                  std::domain_error);
  CHECK_THROWS_AS(bandwidth(sweep, 10.0), std::domain_error);
}
