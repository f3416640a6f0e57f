#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "equimap/bessel.hpp"
#include "equimap/errors.hpp"

using equimap::bessel_j;

namespace {

struct Ref {
  int k;
  double x;
  double value;
};

// reference values computed with 30-digit arithmetic
const Ref kRefs[] = {
    {0, 0.0078125, 0.99998474126914506223},
    {0, 0.5, 0.93846980724081290423},
    {0, 1.0, 0.76519768655796655145},
    {0, 2.5, -0.048383776468197996327},
    {0, 5.0, -0.17759677131433830435},
    {0, 8.0, 0.17165080713755390609},
    {0, 9.5, -0.1939287476874223554},
    {0, 12.0, 0.047689310796833536624},
    {0, 15.7, -0.14007021182904852775},
    {0, 16.9, -0.17878338789121910229},
    {0, 17.1, -0.15928533153226546822},
    {0, 25.0, 0.096266783275958116174},
    {0, 30.1, -0.07410137232401876294},
    {0, 100.3, 0.04185798289980427503},
    {0, 350.0, -0.037479568421573194331},
    {0, 1000.7, 0.01591425475463106505},
    {0, 1608.5, 0.014130353939141155475},
    {0, 3216.9, 0.0090031147818792973524},
    {1, 0.0078125, 0.0039062201977534034335},
    {1, 0.5, 0.24226845767487388638},
    {1, 1.0, 0.44005058574493351596},
    {1, 2.5, 0.49709410246427403801},
    {1, 5.0, -0.32757913759146522204},
    {1, 8.0, 0.23463634685391462438},
    {1, 9.5, 0.16126443075752985095},
    {1, 12.0, -0.22344710449062761237},
    {1, 15.7, 0.14021574694233855491},
    {1, 16.9, -0.080749254250142217252},
    {1, 17.1, -0.11351884829143491856},
    {1, 25.0, -0.12535024958028990465},
    {1, 30.1, -0.1263726827214398318},
    {1, 100.3, -0.067578514396031895607},
    {1, 350.0, -0.020405312952145481697},
    {1, 1000.7, 0.0195760624042517115},
    {1, 1608.5, -0.013999815846326169796},
    {1, 3216.9, -0.010807969364368065435},
    {2, 0.0078125, 7.6293557262167391481e-6},
    {2, 0.5, 0.030604023458682641307},
    {2, 1.0, 0.11490348493190048047},
    {2, 2.5, 0.44605905843961722674},
    {2, 5.0, 0.046565116277752215532},
    {2, 8.0, -0.11299172042407525},
    {2, 9.5, 0.22787915416269179771},
    {2, 12.0, -0.084930494878604805352},
    {2, 15.7, 0.15793209042042923538},
    {2, 16.9, 0.16922726312788866238},
    {2, 17.1, 0.14600827325256547774},
    {2, 25.0, -0.10629480324238130855},
    {2, 30.1, 0.065704516329238707671},
    {2, 100.3, -0.043205510604610494285},
    {2, 350.0, 0.03736296663327522015},
    {2, 1000.7, -0.015875130017138806208},
    {2, 1608.5, -0.014147761232702021089},
    {2, 3216.9, -0.0090098342754068350846},
    {3, 0.5, 0.0025637299945872440754},
    {3, 2.5, 0.21660039103911352477},
    {3, 9.5, -0.065315313215343830864},
    {3, 17.1, 0.14767283033881865604},
    {3, 100.3, 0.065855463125658595735},
    {3, 1608.5, 0.013964633350254793928},
    {4, 0.5, 0.00016073647636428759684},
    {4, 2.5, 0.073781880054255232704},
    {4, 9.5, -0.26913093093027737509},
    {4, 17.1, -0.094193245063506300186},
    {4, 100.3, 0.047145019864370729324},
    {4, 1608.5, 0.014199851876221777858},
    {5, 0.5, 8.053627241357474086e-6},
    {5, 9.5, -0.16132126019962659027},
    {5, 17.1, -0.19173984557320756841},
    {5, 1608.5, -0.013894009281240324408},
    {6, 0.5, 3.3606846286188487954e-7},
    {6, 9.5, 0.099319078088565174812},
    {6, 17.1, -0.017935319599188184263},
    {6, 1608.5, -0.014286230547538161597},
};

}  // namespace

TEST_CASE("reference values to 1e-13 absolute") {
  for (const Ref& r : kRefs) {
    CHECK(std::abs(bessel_j(r.k, r.x) - r.value) < 1e-13);
  }
}

TEST_CASE("limits and argument validation") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(3, 0.0) == 0.0);
  CHECK_THROWS_AS(bessel_j(-1, 1.0), equimap::InvalidInput);
  CHECK_THROWS_AS(bessel_j(7, 1.0), equimap::InvalidInput);
  CHECK_THROWS_AS(bessel_j(0, -1.0), equimap::InvalidInput);
}

TEST_CASE("derivative recursion d_r J_k = (J_{k-1} - J_{k+1})/2") {
  // Richardson-extrapolated central difference as the independent derivative
  auto deriv = [](int k, double x) {
    const double h = 1e-3;
    const double d1 = (bessel_j(k, x + h) - bessel_j(k, x - h)) / (2.0 * h);
    const double d2 = (bessel_j(k, x + 0.5 * h) - bessel_j(k, x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
  };
  for (int k = 1; k <= 4; ++k) {
    for (double x : {0.3, 1.0, 3.7, 9.1, 16.2, 40.5, 201.3, 1500.2}) {
      const double lhs = deriv(k, x);
      const double rhs = 0.5 * (bessel_j(k - 1, x) - bessel_j(k + 1, x));
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
  // k = 0 case uses J_{-1} = -J_1
  for (double x : {0.7, 5.2, 22.1, 800.4}) {
    const double lhs = deriv(0, x);
    const double rhs = 0.5 * (-bessel_j(1, x) - bessel_j(1, x));
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}
