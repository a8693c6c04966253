#pragma once

namespace isowreath {

// Exit codes: 0 success, 1 validation failure, 2 usage error.
int run(int argc, char** argv);

} // namespace isowreath
