#ifndef SHARDGAME_SELFTEST_HPP
#define SHARDGAME_SELFTEST_HPP

#include <iosfwd>

namespace shardgame {

/// Runs the full verification suite (8 criteria) against the bundled
/// experiment settings, printing one PASS/FAIL line per criterion.
/// Returns the number of failed criteria.
int run_acceptance_suite(std::ostream& out);

}  // namespace shardgame

#endif
