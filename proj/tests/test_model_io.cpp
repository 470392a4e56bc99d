#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "convex_oracle.hpp"
#include "recip/model_io.hpp"
#include "recip/rng.hpp"

using namespace recip;
using recip::test::random_instance;

TEST_CASE("dprr model files round trip exactly") {
  Rng rng(7);
  const auto inst = random_instance(rng);
  DprrConfig cfg;
  cfg.alpha = 0.7;
  cfg.beta = 0.3;
  cfg.max_iterations = 2000;
  Dataset ds = inst.ds;
  ds.scaler = compute_standardization(ds.X);
  const DprrModel model = fit_dprr(ds, inst.groups, cfg);

  const std::string path = "model_roundtrip_test.txt";
  save_model(path, to_model_file(model));
  const ModelFile back = load_model(path);
  CHECK(back.kind == "dprr");
  REQUIRE(back.w.size() == model.w.size());
  for (long j = 0; j < model.w.size(); ++j) CHECK(back.w[j] == model.w[j]);
  REQUIRE(back.scaler.has_value());
  for (long j = 0; j < model.w.size(); ++j) {
    CHECK(back.scaler->mean[j] == ds.scaler->mean[j]);
    CHECK(back.scaler->stdev[j] == ds.scaler->stdev[j]);
  }
  REQUIRE(back.weber_points.size() == model.weber_points.size());

  // Second save of the reloaded model is byte-identical.
  const std::string path2 = "model_roundtrip_test2.txt";
  save_model(path2, back);
  std::ifstream a(path), b(path2);
  std::ostringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());

  // Predictions from the reloaded model are identical.
  const DprrModel restored = dprr_from_model_file(back);
  for (int probe = 0; probe < 10; ++probe) {
    Eigen::VectorXd x(model.w.size());
    for (long j = 0; j < x.size(); ++j) x[j] = rng.normal();
    for (const auto& target : model.target_names) {
      CHECK(predict_delay(restored, x, target) == predict_delay(model, x, target));
    }
    CHECK(predict_delay(restored, x, "never-seen") == predict_delay(model, x, "never-seen"));
  }
  std::remove(path.c_str());
  std::remove(path2.c_str());
}

TEST_CASE("ridge and lasso model files keep their kind and params") {
  Eigen::MatrixXd X = Eigen::MatrixXd::Random(20, 4);
  Eigen::VectorXd y = Eigen::VectorXd::Random(20);
  const std::string path = "model_kind_test.txt";

  save_model(path, to_model_file(fit_ridge(X, y, 2.5), std::nullopt));
  ModelFile m = load_model(path);
  CHECK(m.kind == "ridge");
  CHECK(m.params.at("alpha") == "2.5");
  CHECK_FALSE(m.scaler.has_value());
  CHECK_THROWS_AS(dprr_from_model_file(m), DataError);

  save_model(path, to_model_file(fit_lasso(X, y, 0.25), std::nullopt));
  m = load_model(path);
  CHECK(m.kind == "lasso");
  CHECK(m.params.at("lambda") == "0.25");
  std::remove(path.c_str());
}

TEST_CASE("model files reject junk") {
  const std::string path = "model_junk_test.txt";
  {
    std::ofstream out(path);
    out << "not a model\n";
  }
  CHECK_THROWS_AS(load_model(path), ParseError);
  {
    std::ofstream out(path);
    out << "recip-model 1\nkind dprr\nmystery line\n";
  }
  CHECK_THROWS_AS(load_model(path), ParseError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_model("missing_model_file.txt"), IoError);
}
