#pragma once

// The latticelab command line, callable in-process.  Exit codes: 0 success,
// 1 a definitive negative answer (no embedding, no realizer), 2 an error.

#include <ostream>
#include <string>
#include <vector>

namespace latticelab {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latticelab
