#include <algorithm>
#include <sstream>

#include "tfft/error.hpp"
#include "tfft/sim/scheduler.hpp"

namespace tfft::sim {
namespace {

const std::string kHost = "host";

}  // namespace

ScheduleStats Scheduler::run(std::vector<std::pair<std::string, Task>> programs) {
  agents_.clear();
  stats_ = {};
  for (auto& [name, task] : programs) {
    Agent a;
    a.name = std::move(name);
    a.resume_at = task.handle();
    a.task = std::move(task);
    agents_.push_back(std::move(a));
  }

  // Agents must be torn down even when one throws.
  struct Reset {
    Scheduler& s;
    ~Reset() {
      s.current_ = -1;
      s.agents_.clear();
    }
  } reset{*this};

  std::mt19937_64 rng(policy_.seed);
  std::vector<std::size_t> candidates;
  for (;;) {
    if (std::all_of(agents_.begin(), agents_.end(), [](const Agent& a) { return a.finished; })) break;

    if (policy_.kind == SchedulePolicy::Kind::round_robin) {
      bool progressed = false;
      for (std::size_t i = 0; i < agents_.size(); ++i) {
        if (!runnable(agents_[i])) {
          if (!agents_[i].finished) ++stats_.blocked_polls;
          continue;
        }
        current_ = static_cast<int>(i);
        step(agents_[i]);
        progressed = true;
      }
      if (!progressed) report_deadlock();
    } else {
      candidates.clear();
      for (std::size_t i = 0; i < agents_.size(); ++i) {
        if (runnable(agents_[i])) candidates.push_back(i);
      }
      if (candidates.empty()) report_deadlock();
      const std::size_t pick = candidates[rng() % candidates.size()];
      current_ = static_cast<int>(pick);
      step(agents_[pick]);
    }
  }
  return stats_;
}

void Scheduler::step(Agent& a) {
  a.ready = nullptr;
  a.wait_target.clear();
  auto resume_at = std::exchange(a.resume_at, {});
  ++stats_.resumes;
  resume_at.resume();
  current_ = -1;
  if (a.task.done()) {
    a.finished = true;
    if (auto error = a.task.handle().promise().error) std::rethrow_exception(error);
  } else if (!a.resume_at) {
    throw ProtocolViolation("agent '" + a.name + "' suspended outside a blocking operation");
  }
}

void Scheduler::block(std::coroutine_handle<> resume_at, std::function<bool()> ready, std::string wait_target) {
  if (current_ < 0) {
    throw ProtocolViolation("blocking operation issued outside a scheduled agent");
  }
  Agent& a = agents_[static_cast<std::size_t>(current_)];
  a.resume_at = resume_at;
  a.ready = std::move(ready);
  a.wait_target = std::move(wait_target);
}

const std::string& Scheduler::current_agent() const noexcept {
  if (current_ < 0) return kHost;
  return agents_[static_cast<std::size_t>(current_)].name;
}

void Scheduler::report_deadlock() const {
  std::ostringstream msg;
  msg << "deadlock: every live agent is blocked;";
  for (const auto& a : agents_) {
    if (a.finished) continue;
    msg << " [" << a.name << " waits on " << a.wait_target << "]";
  }
  throw Deadlock(msg.str());
}

}  // namespace tfft::sim
