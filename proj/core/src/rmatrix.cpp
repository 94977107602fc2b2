#include "ospchain/rmatrix.hpp"

namespace ospchain {

ConventionSelection select_supertranspose_convention(const ModelParams& p) {
  using G = GaussianRational;
  ConventionSelection out;
  const std::vector<std::pair<G, G>> samples{{G(7, 3), G(2, 5)}, {G(-5, 4), G(3, 7)}};
  auto P = build_P<G>(p.space);
  for (const auto& conv : all_supertranspose_conventions()) {
    Json trial;
    trial["convention"] = conv.id();
    auto q1 = partial_super_transpose(P, "1", conv);
    auto q2 = partial_super_transpose(P, "2", conv);
    bool same = q1 == q2;
    bool square = q1 * q1 == q1 * G(p.M - 2 * p.n);
    bool ybe = same && square && check_ybe<G>(p, samples, 0.0, conv).pass;
    trial["q1_equals_q2"] = same;
    trial["q_square"] = square;
    trial["ybe"] = ybe;
    out.trials.push_back(trial);
    if (same && square && ybe) {
      out.selected = conv;
      break;
    }
  }
  return out;
}

}  // namespace ospchain
