#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obslab/charcocycle.hpp"
#include "obslab/cochain.hpp"
#include "obslab/group.hpp"
#include "obslab/hjr.hpp"
#include "obslab/module.hpp"

namespace obslab {

// A parsed problem description: one coefficient flow over one group, an
// optional subgroup chain, optional sections, and optional cocycle data.
// Parsing validates every table it assembles; later accessors only combine
// already-validated pieces.
//
// Format (line-oriented; '#' starts a comment):
//   group cyclic 4 | group product 2 2 | group heisenberg 2
//   group explicit 3          (followed by 3 rows of the multiplication table)
//   module 2 4                (cyclic moduli)
//   theta identity | theta matrix      (followed by rank rows)
//   action trivial | action sign | action explicit   (|G| blocks of rank rows)
//   torus 1 0                 (generator coordinates; omitted = zero)
//   subgroup L 0 2
//   subgroup M 0
//   section s 0 1             (values per quotient element)
//   section sH 0 1 2 3
//   chi mu <i> <j> <coords>   (sparse; i, j index subgroup L's member list)
//   chi lamH <i> <g> <coords>
//   chi lamT <i> <coords>
//   cocycle 3                 (degree of the cochain the entries describe)
//   entry 1 1 1 1             (group arguments, then coordinates)
//   window 2
//   seed 42
struct ProblemSpec {
    GroupPtr group;
    FlowPtr flow;
    std::optional<std::vector<int>> lmem;
    std::optional<std::vector<int>> mmem;
    std::optional<std::vector<int>> sect_s;
    std::optional<std::vector<int>> sect_sh;

    struct ChiEntry {
        int part = 0;  // 0 = mu, 1 = lamH, 2 = lamT
        int i = 0;
        int g = 0;
        Vec v;
    };
    bool has_chi = false;
    std::vector<ChiEntry> chi_entries;

    std::optional<int> degree;
    std::vector<std::pair<std::vector<int>, Vec>> entries;
    int window = 2;
    i64 seed = 0;
};

// errors: ParseError citing the line; table-validation errors from the
// constructed objects.
ProblemSpec parse_problem(const std::string& text);
// Reads the file and parses it; ParseError when the file cannot be read.
ProblemSpec load_problem(const std::string& path);

// Tower over the problem's flow; requires subgroup L (M defaults to the
// trivial subgroup when absent).
Tower problem_tower(const ProblemSpec& p);
// Characteristic cocycle from the sparse chi entries; requires subgroup L.
CharacteristicCocycle problem_chi(const ProblemSpec& p);
// Cochain of the declared degree from the sparse entries.
Cochain problem_cochain(const ProblemSpec& p);
// Sections of the tower's quotient maps; defaults when not specified.
CrossSection problem_section_s(const ProblemSpec& p, const Tower& t);
CrossSection problem_section_sh(const ProblemSpec& p, const Tower& t);

// Command-line shorthand parsers shared with the front end.
//   groups:  cyclic:4, product:2,2, heisenberg:2, klein
//   modules: Z2, Z3, Z2xZ4
GroupPtr parse_group_arg(const std::string& text);
AbelianModule parse_module_arg(const std::string& text);

}  // namespace obslab
