#pragma once

#include <string_view>

#include "forge/term.hpp"

// Named equations used throughout: the two single identities A1 and A2,
// McKenzie's 4-basis L1-L4, the standard 8-axiom lattice basis, and the
// 51-line derivation of the 4-basis from A1 in proof-file syntax.

namespace forge::fixtures {

inline const Equation& A1() {
  static const Equation e = parse_equation(
      "((((y+x)*x)+(((z*(x+x))+(u*x))*v))*(w+((s+x)*(x+t))))=x");
  return e;
}

inline const Equation& A2() {
  static const Equation e = parse_equation(
      "((((y+x)*x)+(((z*(x+x))+(u*x))*v))*(((w+x)*(s+x))+t))=x");
  return e;
}

inline const Equation& L1() {
  static const Equation e = parse_equation("(x+(y*(x*z)))=x");
  return e;
}

inline const Equation& L2() {
  static const Equation e = parse_equation("(x*(y+(x+z)))=x");
  return e;
}

inline const Equation& L3() {
  static const Equation e = parse_equation("(((y*x)+(x*z))+x)=x");
  return e;
}

inline const Equation& L4() {
  static const Equation e = parse_equation("(((y+x)*(x+z))*x)=x");
  return e;
}

// Commutativity, associativity, idempotence and absorption for both
// operations.
inline const std::vector<Equation>& lattice_axioms() {
  static const std::vector<Equation> axioms = {
      parse_equation("(x*y)=(y*x)"),
      parse_equation("(x+y)=(y+x)"),
      parse_equation("((x*y)*z)=(x*(y*z))"),
      parse_equation("((x+y)+z)=(x+(y+z))"),
      parse_equation("(x*x)=x"),
      parse_equation("(x+x)=x"),
      parse_equation("(x*(x+y))=x"),
      parse_equation("(x+(x*y))=x"),
  };
  return axioms;
}

// The 51-line derivation of {L1,L2,L3,L4} from A1 in proof-file syntax.
// The ninth variable of line 6 is written x8.
inline constexpr std::string_view kA1ProofText = R"(# Derivation of McKenzie's 4-basis from the single absorption law A1.
# L2 = line 33, L4 = line 41, L1 = line 49, L3 = line 51.
1  | ((((y+x)*x)+(((z*(x+x))+(u*x))*v))*(w+((s+x)*(x+t)))) = x | axiom
2  | ((((x+y)*y)+(y+y))*(z+((u+y)*(y+v)))) = y | 1 -> 1
3  | ((((x+(y+y))*(y+y))+((y+y)+(y+y)))*(z+y)) = (y+y) | 2 -> 2
4  | ((((x+y)*y)+(((y+y)+(z*y))*u))*(v+((w+y)*(y+t)))) = y | 3 -> 1
5  | ((((x+(((y+y)+(z*y))*u))*(((y+y)+(z*y))*u))+((((y+y)+(z*y))*u)+(((y+y)+(z*y))*u)))*(v+y)) = (((y+y)+(z*y))*u) | 4 -> 2
6  | ((((x+y)*y)+(((((y+y)+(z*y))*u)+(v*y))*w))*(t+((s+y)*(y+x8)))) = y | 5 -> 1
7  | ((((x+y)*y)+(z*y))*(u+((v+y)*(y+w)))) = y | 6 -> 6
8  | ((((x+(y*z))*(y*z))+(u*(y*z)))*(v+z)) = (y*z) | 7 -> 7
9  | ((((x+y)*y)+(((z*y)+(u*y))*v))*(w+((t+y)*(y+s)))) = y | 8 -> 1
10 | ((((x+y)*y)+y)*(z+((u+y)*(y+v)))) = y | 9 -> 9
11 | ((((x+y)*y)+(((z*y)+(u*y))*v))*(w+y)) = y | 10 -> 9
12 | ((((x+y)*y)+(z*y))*(u+y)) = y | 10 -> 7
13 | ((((x+y)*y)+(y+y))*(z+y)) = y | 10 -> 2
14 | ((x+(y*(x+x)))*(z+((u+(x+x))*((x+x)+v)))) = (x+x) | 13 -> 7
15 | ((x+x)*(y+((z+(x+x))*((x+x)+u)))) = (x+x) | 13 -> 14
16 | ((((x+y)*y)+((z*y)+(z*y)))*(u+y)) = y | 15 -> 11
17 | (((x*y)+(x*y))*(z+y)) = ((x*y)+(x*y)) | 16 -> 15
18 | (((x+y)*y)+((x+y)*y)) = y | 12 -> 17
19 | ((x*y)*(z+y)) = (x*y) | 18 -> 8
20 | (x*(y+x)) = x | 18 -> 12
21 | (x*(y+((z+x)*(x+u)))) = x | 18 -> 7
22 | ((((x+y)*y)+((z*y)+(u*y)))*(v+y)) = y | 20 -> 11
23 | (((x*y)+(z*y))*(u+y)) = ((x*y)+(z*y)) | 22 -> 21
24 | (((x+y)*y)+(z*y)) = y | 12 -> 23
25 | (x*(x+y)) = x | 24 -> 21
26 | (((x+y)*y)+((z*y)+(u*y))) = y | 22 -> 25
27 | (((x+y)*y)+y) = y | 10 -> 25
28 | (x*(y+(x+z))) = (x*(x+z)) | 25 -> 19
29 | ((x*x)+x) = x | 27 -> 27
30 | (x*(y+(x*(x+z)))) = x | 27 -> 21
31 | (x*((y+x)*(x+z))) = x | 27 -> 21
32 | (x*x) = x | 27 -> 20
33 | (x*(y+(x+z))) = x | 25 -> 28
34 | (x+x) = x | 32 -> 29
35 | ((x+y)*y) = y | 24 -> 34
36 | (x*(y*x)) = (y*x) | 24 -> 35
37 | ((x+(((y*x)+(z*x))*u))*(v+x)) = x | 35 -> 11
38 | (((x+y)*(y+z))*y) = (y*((x+y)*(y+z))) | 31 -> 36
39 | ((x+(x*y))*(z+x)) = x | 24 -> 37
40 | (x+(((y*x)+(z*x))*u)) = x | 25 -> 37
41 | (((x+y)*(y+z))*y) = y | 31 -> 38
42 | ((((x*y)+(z*y))+(((x*y)+(z*y))*u))*y) = ((x*y)+(z*y)) | 26 -> 39
43 | ((x*y)*x) = (x*y) | 39 -> 31
44 | (x+(((y*x)+x)*z)) = x | 35 -> 40
45 | (x+((y*x)*z)) = x | 40 -> 40
46 | (((x*y)+y)*y) = ((x*y)+y) | 44 -> 30
47 | (x+(y*(z*x))) = x | 36 -> 45
48 | ((x*y)+y) = y | 35 -> 46
49 | (x+(y*(x*z))) = x | 43 -> 47
50 | (((x*y)+(z*y))+y) = y | 42 -> 48
51 | (((x*y)+(y*z))+y) = y | 43 -> 50
)";

}  // namespace forge::fixtures
