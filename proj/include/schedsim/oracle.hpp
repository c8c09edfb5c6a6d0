#ifndef SCHEDSIM_ORACLE_HPP
#define SCHEDSIM_ORACLE_HPP

#include "schedsim/engine.hpp"

namespace schedsim {

/// Brute-force reference interpreter. Advances one tick at a time and
/// re-evaluates admission, quantum exhaustion and continuation at every
/// tick. Shares no dispatch code with simulate(); after merge_contiguous the
/// two must agree exactly. Slow by construction, meant for differential
/// testing. Context-switch cost is not modelled.
ScheduleTrace oracle_simulate(const WorkloadSpec& workload, const PolicyConfig& config);

} // namespace schedsim

#endif // SCHEDSIM_ORACLE_HPP
