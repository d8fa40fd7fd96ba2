#pragma once

// Compiled-in copies of the files under models/. Keep byte-identical.

namespace sdsk::bundled {

inline constexpr const char* bithreshold_example = R"gdsm(# Bi-threshold network on the 4-vertex graph {1,2},{1,3},{1,4},{2,3},{3,4}
# with up-threshold 1 and down-threshold 3. Each rule sums the closed
# neighborhood: a 0 turns on when the sum reaches 1, a 1 turns off when the
# sum drops below 3.
model bithreshold-example
var x1 in {0,1}
var x2 in {0,1}
var x3 in {0,1}
var x4 in {0,1}
rule x1 := case
  when x1 = 0 and x1 + x2 + x3 + x4 >= 1 => 1
  when x1 = 1 and x1 + x2 + x3 + x4 < 3 => 0
  else x1
end
rule x2 := case
  when x2 = 0 and x1 + x2 + x3 >= 1 => 1
  when x2 = 1 and x1 + x2 + x3 < 3 => 0
  else x2
end
rule x3 := case
  when x3 = 0 and x1 + x2 + x3 + x4 >= 1 => 1
  when x3 = 1 and x1 + x2 + x3 + x4 < 3 => 0
  else x3
end
rule x4 := case
  when x4 = 0 and x1 + x3 + x4 >= 1 => 1
  when x4 = 1 and x1 + x3 + x4 < 3 => 0
  else x4
end
)gdsm";

inline constexpr const char* lac_operon = R"gdsm(# Boolean lac operon network (10 variables). mu0 switches the operon off;
# (mu1, mu2) encodes low (0,0), medium (0,1) and high (1,1) inducer levels.
model lac-operon
param mu0 in {0,1}
param mu1 in {0,1}
param mu2 in {0,1}
var x1 in {0,1}
var x2 in {0,1}
var x3 in {0,1}
var x4 in {0,1}
var x5 in {0,1}
var x6 in {0,1}
var x7 in {0,1}
var x8 in {0,1}
var x9 in {0,1}
var x10 in {0,1}
rule x1 := x4 and not x5 and not x6
rule x2 := x1
rule x3 := x1
rule x4 := not mu0
rule x5 := not x7 and not x8
rule x6 := (not x7 and not x8) or x5
rule x7 := x9 and x3
rule x8 := x9 or x10
rule x9 := x2 and mu1 and not mu0
rule x10 := ((mu2 and x2) or mu1) and not mu0
)gdsm";

inline constexpr const char* celegans = R"gdsm(# Cell-cycle / cell-fate network of the C. elegans vulva precursor cells
# (11 variables; x1 is ternary). Piecewise rules are first-match-wins; a
# multi-valued symbol used as a Boolean operand is true when nonzero.
model celegans
param mu0 in {0,1,2,3}
param mu1 in {0,1}
var x1 in {0,1,2}
var x2 in {0,1}
var x3 in {0,1}
var x4 in {0,1}
var x5 in {0,1}
var x6 in {0,1}
var x7 in {0,1}
var x8 in {0,1}
var x9 in {0,1}
var x10 in {0,1}
var x11 in {0,1}
rule x1 := case
  when (mu0 = 3 and x1 > 0) or (mu0 = 2 and x3 = 0 and x1 > 0) => 2
  when x1 < 2 and ((mu0 = 1 and x3 = 1) or mu0) => 0
  else 1
end
rule x2 := case when x1 <= 1 or x9 = 1 => 1 else 0 end
rule x3 := case
  when ((mu1 = 1 and x2 = 1) or (x3 or mu0)) and (x10 or x11) => 1
  else 0
end
rule x4 := case when x1 = 0 and (x9 = 0 and x8 = 1 or x11 = 1) => 1 else 0 end
rule x5 := case when x6 = 0 => 1 else 0 end
rule x6 := case when x9 = 0 and x10 = 0 => 1 else 0 end
rule x7 := case when x8 = 0 and x10 = 1 => 1 else 0 end
rule x8 := case when x7 = 0 and x11 = 1 => 1 else 0 end
rule x9 := case when x4 = 0 and x7 = 0 and x11 = 0 => 1 else 0 end
rule x10 := case when x5 = 1 and x6 = 0 and x4 = 0 and x7 = 0 => 1 else 0 end
rule x11 := case when x4 = 1 and x8 = 0 and x5 = 1 and (x9 = 0 or x11) => 1 else 0 end
)gdsm";

inline constexpr const char* q3_edges = R"gdsm(# Binary 3-cube: vertex k+1 is the bit string of k, edges join strings at
# Hamming distance one.
vertices 8
1 2
1 3
1 5
2 4
2 6
3 4
3 7
4 8
5 6
5 7
6 8
7 8
)gdsm";

}  // namespace sdsk::bundled
