#pragma once

// Expected values frozen from an independent mpmath implementation
// (tests/oracles/gen_expected.py, 60 significant digits). Regenerate with:
//   python3 tests/oracles/gen_expected.py
namespace oracle {

// brjuno partial sum at n=1 for the constant-type expansion [0;2,2,2,...]:
// log 2 + log(5)/2
inline constexpr const char* kPellBrjunoN1 = "1.497866136776995496717611788071270387838300811494514115077";

// limit of the exponent-product sequence for constant type sqrt(2)-1:
// (sqrt(2)-1)^(1/(2-sqrt(2)))
inline constexpr const char* kPellProductLimit = "0.222106379008377210184037548532557123625417021383728869357438";

// classifier values: {brjuno_partial(25), log product_sequence(30)}
inline constexpr const char* kConst2Partial25 = "2.56225619432";
inline constexpr const char* kConst2LogProd30 = "-1.50459882715";
inline constexpr const char* kPi3Partial25 = "2.71390440156";
inline constexpr const char* kPi3LogProd30 = "-3.12796006286";
inline constexpr const char* kExp1Partial25 = "26.549889198";
inline constexpr const char* kExp1LogProd30 = "-91.4254748187";
inline constexpr const char* kExp1LogProd6 = "-18.2826176758";
inline constexpr const char* kExp5Partial25 = "130.037529838";
inline constexpr const char* kExp5LogProd30 = "-22350.0";
inline constexpr const char* kMixedPartial25 = "112.391569102";
inline constexpr const char* kMixedLogProd30 = "-314.593710574";

// nearest-integer reductions ||1/alpha|| used by the rotation contract
inline constexpr const char* kChild0208 = "0.19230769230769230769";
inline constexpr const char* kChild024 = "0.16666666666666666667";

// gate-experiment parameters: classical continued fractions with golden tails
inline constexpr const char* kGateAlphaA = "0.276393202250021030359082633127";
inline constexpr const char* kGateAlphaB = "0.331152604592360888797538143464";
inline constexpr const char* kGateAlphaC = "0.331125828253143994134164023512";

// domain radii 4/27 e^{+-4 pi}
inline constexpr const char* kOuterRadius = "42481.67602024493329580617";
inline constexpr const char* kInnerRadius = "5.166433120309622950778172e-7";

}  // namespace oracle
