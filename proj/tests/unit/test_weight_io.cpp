#include <sstream>

#include <gtest/gtest.h>

#include "cinerank/error.hpp"
#include "cinerank/weight_opt.hpp"

using namespace cinerank;

TEST(WeightFile, RoundTripIsExact) {
  WeightFile f;
  f.weights = {{0.1, 1.0 / 3.0, 2.0, 0.0, 1e-300}, WeightProvenance::kGa};
  f.seed = 42;
  f.objective = 0.61234567891234;
  f.axis = Axis::kItem;
  std::ostringstream out;
  save_weights(out, f);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "# provenance=ga seed=42 objective=0.61234567891234 axis=item");
  std::istringstream in(out.str());
  const auto g = load_weights(in);
  EXPECT_EQ(g.weights, f.weights);
  EXPECT_EQ(g.seed, 42u);
  EXPECT_EQ(g.objective, f.objective);
  EXPECT_EQ(g.axis, Axis::kItem);
}

TEST(WeightFile, GenreWeightsHaveNoAxis) {
  WeightFile f;
  f.weights = {{1.5, 0.5}, WeightProvenance::kPso};
  std::ostringstream out;
  save_weights(out, f);
  std::istringstream in(out.str());
  const auto g = load_weights(in);
  EXPECT_FALSE(g.axis);
  EXPECT_EQ(g.weights.provenance, WeightProvenance::kPso);
}

TEST(WeightFile, MalformedInputThrows) {
  for (const std::string bad : {"", "0.5\n", "# seed=1\n1.0\n", "# provenance=magic\n", "# provenance=ga\nabc\n",
                                "# provenance=ga\n-1\n", "# provenance=ga axis=diagonal\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(load_weights(in), DataError) << bad;
  }
}

TEST(WeightVector, Uniform) {
  const auto w = WeightVector::uniform(3);
  EXPECT_EQ(w.values, (std::vector<double>{1.0, 1.0, 1.0}));
  EXPECT_EQ(w.provenance, WeightProvenance::kUniform);
  EXPECT_EQ(parse_provenance("pso"), WeightProvenance::kPso);
}
