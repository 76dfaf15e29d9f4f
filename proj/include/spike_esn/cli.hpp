#pragma once

#include <ostream>

namespace spike_esn::cli {

/// Entry point of the spike-esn command-line tool. Returns the process exit
/// status; failures print one line "error: <code>: <message>" to `err`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace spike_esn::cli
