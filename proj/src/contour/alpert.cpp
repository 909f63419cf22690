#include "tdse/contour/alpert.hpp"

#include "tdse/core.hpp"

namespace tdse::contour {

AlpertRuleExt alpert_rule_extended(int p) {
  switch (p) {
    case 2:
      return {2, 2,
              {2.2457849798126139363e-1L, 1.0137193743591641383L},
              {5.540781643606371938e-1L, 9.459218356393628062e-1L}};
    case 4:
      return {4, 4,
              {1.9676024381834345956e-1L, 9.4183500199291982473e-1L,
               1.9652033678540906843L, 2.9974783438470417297L},
              {4.935039628575082905e-1L, 9.428061348804102898e-1L,
               1.0535974041684906302L, 1.0100924980935907895L}};
    case 8:
      return {8, 7,
              {9.8117619537164944594e-2L, 5.0302258015688104361e-1L,
               1.1773437618437675654L, 2.0403429473991146688L,
               3.0033918526940645496L, 3.9995199797444101839L,
               4.9999211397267870751L, 5.9999984429958998526L},
              {2.5018432855612357346e-1L, 5.5111075858780297921e-1L,
               7.8370082066634824067e-1L, 9.2698308252979084909e-1L,
               9.8759802302163553392e-1L, 1.0001904301204154977L,
               1.0002243493491264133L, 1.0000082071687569127L}};
    default:
      throw ConfigError("alpert_rule: p must be 2, 4 or 8");
  }
}

AlpertRule alpert_rule(int p) {
  const AlpertRuleExt e = alpert_rule_extended(p);
  return {e.p, e.kappa, std::vector<double>(e.nodes.begin(), e.nodes.end()),
          std::vector<double>(e.weights.begin(), e.weights.end())};
}

}  // namespace tdse::contour
