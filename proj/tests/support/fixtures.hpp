#pragma once

// Shared desk-scale fixture: a 4-path, 7-node measurement system over a
// small mesh, plus its underlying topology. Frozen reference values used
// in the tests were computed by hand and double-checked against the
// brute-force routines in reference.hpp.
//
// Matrix rows (paths) over columns (nodes 0..6):
//   p0: nodes {0,1,2,4}
//   p1: nodes {0,2,3,6}
//   p2: nodes {2,3,4,5}
//   p3: nodes {1,3,4,6}
//
// Known facts (0-based):
//   columns: c0={p0,p1} c1={p0,p3} c2={p0,p1,p2} c3={p1,p2,p3}
//            c4={p0,p2,p3} c5={p2} c6={p1,p3}
//   SEP_1 = {2,3,4}, ID_1 = DIS_1 = all, SEP_2 = ID_2 = {},
//   DIS_2 = {0,1,5,6}; mu=1 sigma=0 delta=1.

#include <string>

#include "bnt/graphio.hpp"
#include "bnt/pathmatrix.hpp"

namespace fixtures {

inline const char* kDemoMatrixText =
    "1,1,1,0,1,0,0\n"
    "1,0,1,1,0,0,1\n"
    "0,0,1,1,1,1,0\n"
    "0,1,0,1,1,0,1\n";

// The topology the four paths are routed on (0-based edge list).
inline const char* kDemoGraphText =
    "7\n"
    "0 1\n"
    "1 2\n"
    "2 4\n"
    "6 2\n"
    "2 0\n"
    "0 3\n"
    "3 4\n"
    "4 6\n"
    "6 1\n"
    "3 2\n"
    "4 5\n";

inline bnt::PathMatrix demo_matrix() { return bnt::read_matrix(kDemoMatrixText); }

inline bnt::graphio::Graph demo_graph() { return bnt::graphio::read_graph(kDemoGraphText); }

} // namespace fixtures
