#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "secprec/baselines.hpp"

using namespace secprec;
using testutil::make_config;
using testutil::manual_channels;
using testutil::real_cosine;

TEST_SUITE("baselines") {

TEST_CASE("linear precoders on an identity channel") {
  const SystemConfig c = testutil::unit_noise_config(4, 4, 0, 0);
  const ChannelRealization ch = manual_channels(CMat::Identity(4, 4), CMat(4, 0));
  // Orthogonal unit channels: MRT, ZF and RZF all collapse to I/2 up to the
  // RZF loading, which only rescales the (already orthogonal) columns.
  const CMat mrt = linear_precoder(BaselineAlgo::mrt, ch, c);
  const CMat zf = linear_precoder(BaselineAlgo::zf, ch, c);
  const CMat rzf = linear_precoder(BaselineAlgo::rzf, ch, c);
  CHECK((mrt - CMat::Identity(4, 4) * 0.5).norm() < 1e-12);
  CHECK((zf - CMat::Identity(4, 4) * 0.5).norm() < 1e-12);
  CHECK((rzf - CMat::Identity(4, 4) * 0.5).norm() < 1e-12);
}

TEST_CASE("linear precoder structure on random channels") {
  const SystemConfig c = make_config(4, 2, 2, 0);
  const ChannelRealization ch = testutil::drop(c, 50);

  const CMat mrt = linear_precoder(BaselineAlgo::mrt, ch, c);
  for (int k = 0; k < 2; ++k) CHECK(real_cosine(mrt.col(k), ch.h_users.col(k)) > 1.0 - 1e-12);

  const CMat zf = linear_precoder(BaselineAlgo::zf, ch, c);
  CHECK(std::abs(ch.h_users.col(1).dot(zf.col(0))) < 1e-10);
  CHECK(std::abs(ch.h_users.col(0).dot(zf.col(1))) < 1e-10);

  for (BaselineAlgo a : {BaselineAlgo::mrt, BaselineAlgo::zf, BaselineAlgo::rzf,
                         BaselineAlgo::rzf_eve})
    CHECK(std::abs(linear_precoder(a, ch, c).norm() - 1.0) < 1e-12);
}

TEST_CASE("RZF approaches ZF as the loading vanishes") {
  const SystemConfig lo = make_config(4, 2, 0, 0, 60.0);  // K sigma^2/P ~ 1e-10
  const ChannelRealization ch = testutil::drop(lo, 51);
  const CMat rzf = linear_precoder(BaselineAlgo::rzf, ch, lo);
  const CMat zf = linear_precoder(BaselineAlgo::zf, ch, lo);
  for (int k = 0; k < 2; ++k) CHECK(real_cosine(rzf.col(k), zf.col(k)) > 0.999);
}

TEST_CASE("RZF-EVE degenerates to RZF without eavesdroppers and refuses K >= N") {
  const SystemConfig c = make_config(4, 2, 0, 0);
  const ChannelRealization ch = testutil::drop(c, 52);
  CHECK((linear_precoder(BaselineAlgo::rzf_eve, ch, c) -
         linear_precoder(BaselineAlgo::rzf, ch, c))
            .norm() == 0.0);

  // RZF-EVE needs spare dimensions (K < N); plain ZF only needs K <= N.
  const SystemConfig square = make_config(4, 4, 1, 0);
  const ChannelRealization chs = testutil::drop(square, 53);
  CHECK_THROWS_AS(linear_precoder(BaselineAlgo::rzf_eve, chs, square), SolverError);
  CHECK_NOTHROW(linear_precoder(BaselineAlgo::zf, chs, square));

  const SystemConfig over = make_config(4, 5, 1, 0);
  const ChannelRealization cho = testutil::drop(over, 53);
  CHECK_THROWS_AS(linear_precoder(BaselineAlgo::zf, cho, over), SolverError);
}

TEST_CASE("null-space extension: no eavesdroppers means no AN spend") {
  const SystemConfig c = make_config(4, 2, 0, 2);
  const ChannelRealization ch = testutil::drop(c, 54);
  const CMat f = linear_precoder(BaselineAlgo::zf, ch, c);
  const SolverResult r = ns_extension(f, ch, c, LineSearchSettings{});
  CHECK(r.xi_selected == 0.0);
  CHECK((r.precoder - f).norm() < 1e-15);
  CHECK(r.power_split == 0.0);
}

TEST_CASE("null-space extension never hurts the precoder it wraps") {
  const SystemConfig c = make_config(4, 2, 2, 2);
  SolverSettings s;
  for (int i = 0; i < 20; ++i) {
    const ChannelRealization ch = testutil::drop(c, 1000 + i);
    const SolverResult plain = run_baseline({BaselineAlgo::mrt, false}, ch, c, s);
    const SolverResult wrapped = run_baseline({BaselineAlgo::mrt, true}, ch, c, s);
    CHECK(wrapped.report.sum_secrecy >= plain.report.sum_secrecy);
  }
}

TEST_CASE("GPIP baseline without eavesdroppers is exactly the secrecy solver") {
  const SystemConfig c = make_config(4, 2, 0, 2);
  const ChannelRealization ch = testutil::drop(c, 55);
  SolverSettings s;
  const SolverResult a = gpip_baseline(ch, c, s);
  const SolverResult b = s_gpip(ch, c, s);
  CHECK((a.precoder - b.precoder).norm() == 0.0);
  CHECK(a.report.sum_secrecy == b.report.sum_secrecy);
  CHECK(a.an_factor.cols() == 0);

  const SystemConfig k1 = make_config(4, 1, 0, 0);
  const ChannelRealization ch1 = testutil::drop(k1, 56);
  const SolverResult r1 = gpip_baseline(ch1, k1, s);
  CHECK(real_cosine(r1.precoder.col(0), ch1.h_users.col(0)) > 0.999);
}

TEST_CASE("ignoring eavesdroppers costs secrecy on average") {
  const SystemConfig c = make_config(8, 2, 4, 8, 20.0, 2.0);
  SolverSettings s;
  s.gpi.max_iters = 120;
  const int n = 40;
  double gap = 0.0, gap_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const ChannelRealization ch = testutil::drop(c, 1100 + i);
    const double d = s_gpip(ch, c, s).report.sum_secrecy -
                     gpip_baseline(ch, c, s).report.sum_secrecy;
    gap += d / n;
    gap_sq += d * d / n;
  }
  const double se = std::sqrt(std::max(gap_sq - gap * gap, 0.0) / n);
  CHECK(gap >= -se);
}

TEST_CASE("NS-wrapped baselines carry the base run's bookkeeping") {
  const SystemConfig c = make_config(4, 2, 2, 2);
  const ChannelRealization ch = testutil::drop(c, 57);
  SolverSettings s;
  const SolverResult base = run_baseline({BaselineAlgo::gpip, false}, ch, c, s);
  const SolverResult ns = run_baseline({BaselineAlgo::gpip, true}, ch, c, s);
  CHECK(ns.iterations == base.iterations);
  CHECK(ns.trace.size() == base.trace.size());
  CHECK(std::abs(ns.total_power() - 1.0) < 1e-9);
  CHECK(ns.alpha_used == base.alpha_used);
}

}  // TEST_SUITE("baselines")
