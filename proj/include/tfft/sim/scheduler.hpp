#pragma once

// Cooperative scheduling of agent programs written as C++20 coroutines.
//
// An agent program is a `Task`. It runs until it co_awaits a blocking
// operation, which records a readiness predicate with the scheduler and
// suspends. The scheduler resumes agents in a fixed order (or a seeded
// random order for interleaving tests) and reports a deadlock when a full
// pass finds every live agent blocked.

#include <coroutine>
#include <cstdint>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace tfft::sim {

/// Lazily started coroutine. Awaiting a Task from another Task runs it as a
/// nested call and rethrows its exception in the caller.
class Task {
 public:
  struct promise_type {
    std::coroutine_handle<> continuation;
    std::exception_ptr error;

    Task get_return_object() { return Task{std::coroutine_handle<promise_type>::from_promise(*this)}; }
    std::suspend_always initial_suspend() noexcept { return {}; }

    struct FinalAwaiter {
      bool await_ready() const noexcept { return false; }
      std::coroutine_handle<> await_suspend(std::coroutine_handle<promise_type> h) noexcept {
        if (auto next = h.promise().continuation) return next;
        return std::noop_coroutine();
      }
      void await_resume() const noexcept {}
    };
    FinalAwaiter final_suspend() noexcept { return {}; }

    void return_void() noexcept {}
    void unhandled_exception() noexcept { error = std::current_exception(); }
  };

  using Handle = std::coroutine_handle<promise_type>;

  Task() = default;
  explicit Task(Handle h) : handle_(h) {}
  Task(Task&& other) noexcept : handle_(std::exchange(other.handle_, {})) {}
  Task& operator=(Task&& other) noexcept {
    if (this != &other) {
      if (handle_) handle_.destroy();
      handle_ = std::exchange(other.handle_, {});
    }
    return *this;
  }
  Task(const Task&) = delete;
  Task& operator=(const Task&) = delete;
  ~Task() {
    if (handle_) handle_.destroy();
  }

  Handle handle() const noexcept { return handle_; }
  bool done() const noexcept { return !handle_ || handle_.done(); }

  bool await_ready() const noexcept { return false; }
  std::coroutine_handle<> await_suspend(std::coroutine_handle<> caller) noexcept {
    handle_.promise().continuation = caller;
    return handle_;
  }
  void await_resume() const {
    if (handle_.promise().error) std::rethrow_exception(handle_.promise().error);
  }

 private:
  Handle handle_;
};

struct SchedulePolicy {
  enum class Kind { round_robin, seeded_random };
  Kind kind = Kind::round_robin;
  std::uint64_t seed = 0;

  static SchedulePolicy round_robin() { return {}; }
  static SchedulePolicy random(std::uint64_t seed) { return {Kind::seeded_random, seed}; }
};

struct ScheduleStats {
  std::uint64_t resumes = 0;
  std::uint64_t blocked_polls = 0;
};

class Scheduler {
 public:
  void set_policy(SchedulePolicy policy) { policy_ = policy; }

  /// Runs every program to completion. Throws Deadlock when no agent can
  /// progress, and rethrows the first exception raised by an agent.
  ScheduleStats run(std::vector<std::pair<std::string, Task>> programs);

  /// Called from an awaitable's await_suspend: the current agent resumes at
  /// `resume_at` once `ready()` holds.
  void block(std::coroutine_handle<> resume_at, std::function<bool()> ready, std::string wait_target);

  /// Name of the agent currently executing, or "host" outside a run.
  const std::string& current_agent() const noexcept;
  bool running() const noexcept { return current_ >= 0; }

 private:
  struct Agent {
    std::string name;
    Task task;
    std::coroutine_handle<> resume_at;
    std::function<bool()> ready;
    std::string wait_target;
    bool finished = false;
  };

  bool runnable(const Agent& a) const { return !a.finished && (!a.ready || a.ready()); }
  void step(Agent& a);
  [[noreturn]] void report_deadlock() const;

  SchedulePolicy policy_;
  std::vector<Agent> agents_;
  int current_ = -1;
  ScheduleStats stats_;
};

/// Awaitable that always yields to the scheduler and, once `ready` holds,
/// performs `act` and returns its result.
template <class Result>
class BlockingOp {
 public:
  BlockingOp(Scheduler& sched, std::function<bool()> ready, std::function<Result()> act, std::string target)
      : sched_(sched), ready_(std::move(ready)), act_(std::move(act)), target_(std::move(target)) {}

  bool await_ready() const noexcept { return false; }
  void await_suspend(std::coroutine_handle<> h) { sched_.block(h, std::move(ready_), std::move(target_)); }
  Result await_resume() { return act_(); }

 private:
  Scheduler& sched_;
  std::function<bool()> ready_;
  std::function<Result()> act_;
  std::string target_;
};

}  // namespace tfft::sim
