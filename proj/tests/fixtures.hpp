#pragma once

#include <vector>

namespace tml::fixtures {

// Totals over all Dyck paths of half-length s = 1..10, frozen from an
// independent brute-force enumeration.
inline const std::vector<long> kCatalan = {1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
inline const std::vector<long> kKTotals = {2, 12, 58, 260, 1124, 4760, 19898, 82452, 339532, 1391720};
inline const std::vector<long> kStayAboveTotals = {1, 4, 9, 36, 100, 400, 1225, 4900, 15876, 63504};
// Order-2 tensor totals, s = 1..6.
inline const std::vector<long> kTensor2Totals = {0, 0, 36, 488, 4192, 29216};

}  // namespace tml::fixtures
