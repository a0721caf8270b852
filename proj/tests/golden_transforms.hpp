/*
 * Copyright 2026 The rnsw Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Transform matrices for F(10x10, 3x3) reduced modulo 253, 251, 247, 4001 and 4331.
#pragma once

#include <array>
#include <cstdint>

namespace rnsw::golden {

inline constexpr std::array<std::array<std::int32_t, 12>, 10> at_253 = {{
    {{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0}},
    {{0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 0}},
    {{0, 1, 1, 4, 4, 9, 9, 16, 16, 25, 25, 0}},
    {{0, 1, -1, 8, -8, 27, -27, 64, -64, 125, -125, 0}},
    {{0, 1, 1, 16, 16, 81, 81, 3, 3, 119, 119, 0}},
    {{0, 1, -1, 32, -32, -10, 10, 12, -12, 89, -89, 0}},
    {{0, 1, 1, 64, 64, -30, -30, 48, 48, -61, -61, 0}},
    {{0, 1, -1, -125, 125, -90, 90, -61, 61, -52, 52, 0}},
    {{0, 1, 1, 3, 3, -17, -17, 9, 9, -7, -7, 0}},
    {{0, 1, -1, 6, -6, -51, 51, 36, -36, -35, 35, 1}},
}};

inline constexpr std::array<std::array<std::int32_t, 3>, 12> g_253 = {{
    {{12, 0, 0}},
    {{10, 10, 10}},
    {{10, -10, 10}},
    {{78, -97, 59}},
    {{78, 97, 59}},
    {{-34, -102, -53}},
    {{-34, 102, -53}},
    {{-120, 26, 104}},
    {{-120, -26, 104}},
    {{-12, -60, -47}},
    {{-12, 60, -47}},
    {{0, 0, 1}},
}};

inline constexpr std::array<std::array<std::int32_t, 12>, 12> bt_253 = {{
    {{-21, 0, -77, 0, 55, 0, -11, 0, 55, 0, -1, 0}},
    {{0, -21, -21, -98, -98, -43, -43, -54, -54, 1, 1, 0}},
    {{0, 21, -21, 98, -98, 43, -43, 54, -54, -1, 1, 0}},
    {{0, -116, -58, -117, 68, -120, -60, 102, 51, -2, -1, 0}},
    {{0, 116, -58, 117, 68, 120, -60, -102, 51, 2, -1, 0}},
    {{0, -7, 82, 86, 113, 56, 103, 115, -46, 3, 1, 0}},
    {{0, 7, 82, -86, 113, -56, 103, -115, -46, -3, 1, 0}},
    {{0, -58, 112, -16, -4, -78, 107, -97, 39, -4, -1, 0}},
    {{0, 58, 112, 16, -4, 78, 107, 97, 39, 4, -1, 0}},
    {{0, 97, 70, -52, -61, 100, 20, 103, -30, 5, 1, 0}},
    {{0, -97, 70, 52, -61, -100, 20, -103, -30, -5, 1, 0}},
    {{0, 21, 0, 77, 0, -55, 0, 11, 0, -55, 0, 1}},
}};

inline constexpr std::array<std::array<std::int32_t, 12>, 10> at_251 = {{
    {{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0}},
    {{0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 0}},
    {{0, 1, 1, 4, 4, 9, 9, 16, 16, 25, 25, 0}},
    {{0, 1, -1, 8, -8, 27, -27, 64, -64, 125, -125, 0}},
    {{0, 1, 1, 16, 16, 81, 81, 5, 5, 123, 123, 0}},
    {{0, 1, -1, 32, -32, -8, 8, 20, -20, 113, -113, 0}},
    {{0, 1, 1, 64, 64, -24, -24, 80, 80, 63, 63, 0}},
    {{0, 1, -1, -123, 123, -72, 72, 69, -69, 64, -64, 0}},
    {{0, 1, 1, 5, 5, 35, 35, 25, 25, 69, 69, 0}},
    {{0, 1, -1, 10, -10, 105, -105, 100, -100, 94, -94, 1}},
}};

inline constexpr std::array<std::array<std::int32_t, 3>, 12> g_251 = {{
    {{27, 0, 0}},
    {{-103, -103, -103}},
    {{-103, 103, -103}},
    {{-23, -46, -92}},
    {{-23, 46, -92}},
    {{-40, -120, -109}},
    {{-40, 120, -109}},
    {{19, 76, 53}},
    {{19, -76, 53}},
    {{27, -116, -78}},
    {{27, 116, -78}},
    {{0, 0, 1}},
}};

inline constexpr std::array<std::array<std::int32_t, 12>, 12> bt_251 = {{
    {{93, 0, 8, 0, 115, 0, -19, 0, 55, 0, -1, 0}},
    {{0, 93, 93, 101, 101, -35, -35, -54, -54, 1, 1, 0}},
    {{0, -93, 93, -101, 101, 35, -35, 54, -54, -1, 1, 0}},
    {{0, 79, -86, -47, 102, 119, -66, 102, 51, -2, -1, 0}},
    {{0, -79, -86, 47, 102, -119, -66, -102, 51, 2, -1, 0}},
    {{0, 31, 94, 34, 95, 70, 107, 113, -46, 3, 1, 0}},
    {{0, -31, 94, -34, 95, -70, 107, -113, -46, -3, 1, 0}},
    {{0, -86, 104, 24, 6, -90, 103, -95, 39, -4, -1, 0}},
    {{0, 86, 104, -24, 6, 90, 103, 95, 39, 4, -1, 0}},
    {{0, 119, 74, -84, -67, 110, 22, 101, -30, 5, 1, 0}},
    {{0, -119, 74, 84, -67, -110, 22, -101, -30, -5, 1, 0}},
    {{0, -93, 0, -8, 0, -115, 0, 19, 0, -55, 0, 1}},
}};

inline constexpr std::array<std::array<std::int32_t, 12>, 10> at_247 = {{
    {{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0}},
    {{0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 0}},
    {{0, 1, 1, 4, 4, 9, 9, 16, 16, 25, 25, 0}},
    {{0, 1, -1, 8, -8, 27, -27, 64, -64, -122, 122, 0}},
    {{0, 1, 1, 16, 16, 81, 81, 9, 9, -116, -116, 0}},
    {{0, 1, -1, 32, -32, -4, 4, 36, -36, -86, 86, 0}},
    {{0, 1, 1, 64, 64, -12, -12, -103, -103, 64, 64, 0}},
    {{0, 1, -1, -119, 119, -36, 36, 82, -82, 73, -73, 0}},
    {{0, 1, 1, 9, 9, -108, -108, 81, 81, 118, 118, 0}},
    {{0, 1, -1, 18, -18, -77, 77, 77, -77, 96, -96, 1}},
}};

inline constexpr std::array<std::array<std::int32_t, 3>, 12> g_247 = {{
    {{-10, 0, 0}},
    {{74, 74, 74}},
    {{74, -74, 74}},
    {{7, 14, 28}},
    {{7, -14, 28}},
    {{-90, -23, -69}},
    {{-90, 23, -69}},
    {{-20, -80, -73}},
    {{-20, 80, -73}},
    {{-2, -10, -50}},
    {{-2, 10, -50}},
    {{0, 0, 1}},
}};

inline constexpr std::array<std::array<std::int32_t, 12>, 12> bt_247 = {{
    {{74, 0, -81, 0, -12, 0, -35, 0, 55, 0, -1, 0}},
    {{0, 74, 74, -7, -7, -19, -19, -54, -54, 1, 1, 0}},
    {{0, -74, 74, 7, -7, 19, -19, 54, -54, -1, 1, 0}},
    {{0, -37, 105, 93, -77, 91, -78, 102, 51, -2, -1, 0}},
    {{0, 37, 105, -93, -77, -91, -78, -102, 51, 2, -1, 0}},
    {{0, 107, 118, -70, 59, 98, 115, 109, -46, 3, 1, 0}},
    {{0, -107, 118, 70, 59, -98, 115, -109, -46, -3, 1, 0}},
    {{0, 105, 88, 104, 26, -114, 95, -91, 39, -4, -1, 0}},
    {{0, -105, 88, -104, 26, 114, 95, 91, 39, 4, -1, 0}},
    {{0, -84, 82, 99, -79, -117, 26, 97, -30, 5, 1, 0}},
    {{0, 84, 82, -99, -79, 117, 26, -97, -30, -5, 1, 0}},
    {{0, -74, 0, 81, 0, 12, 0, 35, 0, -55, 0, 1}},
}};

inline constexpr std::array<std::array<std::int32_t, 12>, 10> at_4001 = {{
    {{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0}},
    {{0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 0}},
    {{0, 1, 1, 4, 4, 9, 9, 16, 16, 25, 25, 0}},
    {{0, 1, -1, 8, -8, 27, -27, 64, -64, 125, -125, 0}},
    {{0, 1, 1, 16, 16, 81, 81, 256, 256, 625, 625, 0}},
    {{0, 1, -1, 32, -32, 243, -243, 1024, -1024, -876, 876, 0}},
    {{0, 1, 1, 64, 64, 729, 729, 95, 95, -379, -379, 0}},
    {{0, 1, -1, 128, -128, -1814, 1814, 380, -380, -1895, 1895, 0}},
    {{0, 1, 1, 256, 256, -1441, -1441, 1520, 1520, -1473, -1473, 0}},
    {{0, 1, -1, 512, -512, -322, 322, -1922, 1922, 637, -637, 1}},
}};

inline constexpr std::array<std::array<std::int32_t, 3>, 12> g_4001 = {{
    {{222, 0, 0}},
    {{185, 185, 185}},
    {{185, -185, 185}},
    {{-1609, 783, 1566}},
    {{-1609, -783, 1566}},
    {{897, -1310, 71}},
    {{897, 1310, 71}},
    {{1533, -1870, 522}},
    {{1533, 1870, 522}},
    {{-1047, -1234, 1832}},
    {{-1047, 1234, 1832}},
    {{0, 0, 1}},
}};

inline constexpr std::array<std::array<std::int32_t, 12>, 12> bt_4001 = {{
    {{-1604, 0, -1071, 0, -357, 0, -1023, 0, 55, 0, -1, 0}},
    {{0, -1604, -1604, 1326, 1326, 969, 969, -54, -54, 1, 1, 0}},
    {{0, 1604, -1604, -1326, 1326, -969, 969, 54, -54, -1, 1, 0}},
    {{0, 802, 401, 736, 368, -1638, -819, 102, 51, -2, -1, 0}},
    {{0, -802, 401, -736, 368, 1638, -819, -102, 51, 2, -1, 0}},
    {{0, 799, 1600, 1510, 1837, 1827, 609, -138, -46, 3, 1, 0}},
    {{0, -799, 1600, -1510, 1837, -1827, 609, 138, -46, -3, 1, 0}},
    {{0, 401, -900, 1043, 1261, -1596, -399, 156, 39, -4, -1, 0}},
    {{0, -401, -900, -1043, 1261, 1596, -399, -156, 39, 4, -1, 0}},
    {{0, -1121, 576, -99, -820, 1365, 273, -150, -30, 5, 1, 0}},
    {{0, 1121, 576, 99, -820, -1365, 273, 150, -30, -5, 1, 0}},
    {{0, 1604, 0, 1071, 0, 357, 0, 1023, 0, -55, 0, 1}},
}};

inline constexpr std::array<std::array<std::int32_t, 12>, 10> at_4331 = {{
    {{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0}},
    {{0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 0}},
    {{0, 1, 1, 4, 4, 9, 9, 16, 16, 25, 25, 0}},
    {{0, 1, -1, 8, -8, 27, -27, 64, -64, 125, -125, 0}},
    {{0, 1, 1, 16, 16, 81, 81, 256, 256, 625, 625, 0}},
    {{0, 1, -1, 32, -32, 243, -243, 1024, -1024, -1206, 1206, 0}},
    {{0, 1, 1, 64, 64, 729, 729, -235, -235, -1699, -1699, 0}},
    {{0, 1, -1, 128, -128, -2144, 2144, -940, 940, 167, -167, 0}},
    {{0, 1, 1, 256, 256, -2101, -2101, 571, 571, 835, 835, 0}},
    {{0, 1, -1, 512, -512, -1972, 1972, -2047, 2047, -156, 156, 1}},
}};

inline constexpr std::array<std::array<std::int32_t, 3>, 12> g_4331 = {{
    {{1693, 0, 0}},
    {{689, 689, 689}},
    {{689, -689, 689}},
    {{-225, -450, -900}},
    {{-225, 450, -900}},
    {{457, 1371, -218}},
    {{457, -1371, -218}},
    {{1064, -75, -300}},
    {{1064, 75, -300}},
    {{-1626, 532, -1671}},
    {{-1626, -532, -1671}},
    {{0, 0, 1}},
}};

inline constexpr std::array<std::array<std::int32_t, 12>, 12> bt_4331 = {{
    {{1407, 0, 579, 0, -1017, 0, -1023, 0, 55, 0, -1, 0}},
    {{0, 1407, 1407, 1986, 1986, 969, 969, -54, -54, 1, 1, 0}},
    {{0, -1407, 1407, -1986, 1986, -969, 969, 54, -54, -1, 1, 0}},
    {{0, 1462, 731, 76, 38, -1638, -819, 102, 51, -2, -1, 0}},
    {{0, -1462, 731, -76, 38, 1638, -819, -102, 51, 2, -1, 0}},
    {{0, 469, 1600, -2161, -2164, 1827, 609, -138, -46, 3, 1, 0}},
    {{0, -469, 1600, 2161, -2164, -1827, 609, 138, -46, -3, 1, 0}},
    {{0, 731, -900, 713, 1261, -1596, -399, 156, 39, -4, -1, 0}},
    {{0, -731, -900, -713, 1261, 1596, -399, -156, 39, 4, -1, 0}},
    {{0, -1451, 576, 231, -820, 1365, 273, -150, -30, 5, 1, 0}},
    {{0, 1451, 576, -231, -820, -1365, 273, 150, -30, -5, 1, 0}},
    {{0, -1407, 0, -579, 0, 1017, 0, 1023, 0, -55, 0, 1}},
}};

// Exact (unreduced) F(10x10, 3x3) matrices: A^T, B^T and the integer G' = G / alpha.
inline constexpr std::array<std::array<std::int64_t, 12>, 10> at_exact = {{
    {{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0}},
    {{0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 0}},
    {{0, 1, 1, 4, 4, 9, 9, 16, 16, 25, 25, 0}},
    {{0, 1, -1, 8, -8, 27, -27, 64, -64, 125, -125, 0}},
    {{0, 1, 1, 16, 16, 81, 81, 256, 256, 625, 625, 0}},
    {{0, 1, -1, 32, -32, 243, -243, 1024, -1024, 3125, -3125, 0}},
    {{0, 1, 1, 64, 64, 729, 729, 4096, 4096, 15625, 15625, 0}},
    {{0, 1, -1, 128, -128, 2187, -2187, 16384, -16384, 78125, -78125, 0}},
    {{0, 1, 1, 256, 256, 6561, 6561, 65536, 65536, 390625, 390625, 0}},
    {{0, 1, -1, 512, -512, 19683, -19683, 262144, -262144, 1953125, -1953125, 1}},
}};

inline constexpr std::array<std::array<std::int64_t, 12>, 12> bt_exact = {{
    {{14400, 0, -21076, 0, 7645, 0, -1023, 0, 55, 0, -1, 0}},
    {{0, 14400, 14400, -6676, -6676, 969, 969, -54, -54, 1, 1, 0}},
    {{0, -14400, 14400, 6676, -6676, -969, 969, 54, -54, -1, 1, 0}},
    {{0, -7200, -3600, 8738, 4369, -1638, -819, 102, 51, -2, -1, 0}},
    {{0, 7200, -3600, -8738, 4369, 1638, -819, -102, 51, 2, -1, 0}},
    {{0, 4800, 1600, -6492, -2164, 1827, 609, -138, -46, 3, 1, 0}},
    {{0, -4800, 1600, 6492, -2164, -1827, 609, 138, -46, -3, 1, 0}},
    {{0, -3600, -900, 5044, 1261, -1596, -399, 156, 39, -4, -1, 0}},
    {{0, 3600, -900, -5044, 1261, 1596, -399, -156, 39, 4, -1, 0}},
    {{0, 2880, 576, -4100, -820, 1365, 273, -150, -30, 5, 1, 0}},
    {{0, -2880, 576, 4100, -820, -1365, 273, 150, -30, -5, 1, 0}},
    {{0, -14400, 0, 21076, 0, -7645, 0, 1023, 0, -55, 0, 1}},
}};

inline constexpr std::array<std::array<std::int64_t, 3>, 12> gprime_exact = {{
    {{252, 0, 0}},
    {{210, 210, 210}},
    {{210, -210, 210}},
    {{120, 240, 480}},
    {{120, -240, 480}},
    {{45, 135, 405}},
    {{45, -135, 405}},
    {{10, 40, 160}},
    {{10, -40, 160}},
    {{1, 5, 25}},
    {{1, -5, 25}},
    {{0, 0, 3628800}},
}};

}  // namespace rnsw::golden
