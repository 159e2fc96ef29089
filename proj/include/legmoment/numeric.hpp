#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace legmoment {

/// Working precision for everything downstream of the cascade accumulators
/// (basis change, scaling, moment recurrence). x87 extended on x86-64.
using Wide = long double;

using BigInt = boost::multiprecision::cpp_int;

enum class Arithmetic { approximate, exact };

inline Wide to_wide(const BigInt& v) { return v.convert_to<Wide>(); }

} // namespace legmoment
