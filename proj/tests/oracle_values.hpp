#pragma once

// Frozen reference values from tests/oracles/make_oracles.py (50 digit
// arithmetic, built straight from the Cartan normal form).

namespace oracle {

inline constexpr double t_red_p335 = 5.0375591418015602;
inline constexpr double t_crit_p335 = 4.6512598457292852;
inline constexpr double t_red_p355 = 11.622161417334462;
inline constexpr double t_crit_p355 = 10.408493089226382;
inline constexpr double t_red_p555 = 24.13891300137765;
inline constexpr double t_crit_p555 = 21.110427446474906;
inline constexpr double t_red_p337 = 7.9724019670293869;
inline constexpr double t_crit_p337 = 7.2766728578476087;
inline constexpr double t_red_p533 = 5.0375591418015602;
inline constexpr double t_crit_p533 = 4.6512598457292852;
inline constexpr double t_red_p777 = 77.263693950297277;
inline constexpr double t_crit_p777 = 66.339753807073353;

// Coxeter eigenvalues of (3,3,5) Barbot at t_red, by decreasing modulus.
inline constexpr double cox_eig_red_p335[3] = {-1.9962804110890266, -1.0, 0.50093162986780606};
// Same at 2 t_red, with the attracting eigenvector (unit, largest entry positive).
inline constexpr double cox_eig_2red_p335[3] = {-5.473650810182121, -0.50027022172058996, 0.36518948071037505};
inline constexpr double cox_vec_2red_p335[3] = {0.52216127692646624, 0.84768868109273187, 0.093656290903424935};

// (t1, t2, t3, x, y) at sample parameters.
inline constexpr double traces_hitchin_p335_t1[5] = {0.0, 0.0, 1.6180339887498948, -3.2360679774997897, -3.2360679774997897};
inline constexpr double traces_hitchin_p335_t2[5] = {0.0, 0.0, 1.6180339887498948, -4.8541019662496845, -2.4270509831248423};
inline constexpr double traces_barbot_p335_t3[5] = {0.0, 0.0, -0.61803398874989485, -1.2360679774997897, 0.41202265916659657};
inline constexpr double traces_barbot_p555_t07[5] = {-0.61803398874989485, -0.61803398874989485, -0.61803398874989485, 1.6888543819998318, 1.5168619983928421};
inline constexpr double traces_type_p477_t15[5] = {1.0, 0.55495813208737119, -0.80193773580483825, -1.9302643717033327, -1.2762399409139995};

// Roots u_minus, u_plus of f for (3,3,5) Barbot constants.
inline constexpr double goldman_u_p335[2] = {1.3363823550460978e-51, 1.2360679774997897};

// Number of elements of each word length 0, 1, ..., by search over matrix images.
inline constexpr int growth_p237[17] = {1, 3, 5, 7, 9, 12, 16, 20, 24, 28, 33, 40, 48, 57, 67, 78, 92};
inline constexpr int growth_p335[13] = {1, 3, 6, 10, 16, 25, 38, 57, 86, 130, 196, 295, 444};
inline constexpr int growth_p334[13] = {1, 3, 6, 10, 15, 22, 31, 44, 62, 87, 122, 171, 240};
inline constexpr int growth_p555[11] = {1, 3, 6, 12, 24, 45, 84, 159, 300, 564, 1062};

}  // namespace oracle

