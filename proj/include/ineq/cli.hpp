#pragma once

namespace ineq {

// Command-line front end. Parses argv, runs the selected command
// (constants | check | cover | lt | fermi | matter | all), writes the JSON
// report to --out (stdout otherwise) and an optional CSV table to --csv.
//
// Exit code: 0 when every emitted check passed, 2 when at least one
// inequality entry failed, 1 on usage or domain errors (unknown flags,
// unsupported parameter combinations).
int run_cli(int argc, const char* const* argv);

} // namespace ineq
