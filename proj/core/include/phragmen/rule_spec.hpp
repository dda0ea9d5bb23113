#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "phragmen/election.hpp"
#include "phragmen/phragmen.hpp"
#include "phragmen/schedules.hpp"
#include "phragmen/thiele.hpp"
#include "phragmen/tie_rule.hpp"

namespace phragmen {

// A committee rule together with its generator function.
//
// Text grammar (numbers accept decimals or fractions, "0.9" == "9/10"):
//   classic
//   alpha:const | alpha:geom:Q | alpha:geomshift:Q | alpha:pow:P | alpha:table:A1,A2,...
//   beta:const  | beta:exp:B[:C] | beta:table:B0,...,BN
//   ALPHA+BETA                       both variations at once
//   thiele:pav | thiele:geom:Q | thiele:av | thiele:table:L1,...
//   seqthiele:<same weights as thiele>
//   degr | lin | regr                presets used by the simulations
struct RuleSpec {
  enum class Family { kPhragmen, kThiele, kSeqThiele };

  Family family = Family::kPhragmen;
  SpeedSchedule alpha = SpeedSchedule::constant();
  CostFunction beta = CostFunction::constant();
  ThieleWeights lambda = ThieleWeights::pav();
  std::string text;

  bool sequential() const noexcept { return family != Family::kThiele; }

  static RuleSpec phragmen(SpeedSchedule alpha, CostFunction beta, std::string text);
  static RuleSpec thiele(ThieleWeights lambda, std::string text);
  static RuleSpec seq_thiele(ThieleWeights lambda, std::string text);
};

RuleSpec parse_rule(std::string_view text);

struct RuleRunOptions {
  TieRule tie = TieRule::lex();
  ModeRequest mode = ModeRequest::kAuto;
  double eps = 1e-9;
  ThieleOptions thiele;
};

// All winning committees. Sequential rules yield exactly one (selection
// order); exact Thiele yields every optimum in ascending member order.
std::vector<Committee> winning_committees(const RuleSpec& rule, const Election& e,
                                          const RuleRunOptions& options = {});

}  // namespace phragmen
