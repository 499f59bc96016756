#ifndef MDSCM_DIAGNOSTICS_HPP_
#define MDSCM_DIAGNOSTICS_HPP_

#include <mutex>
#include <string>
#include <vector>

namespace mdscm {

/// Collects non-fatal warnings raised while assembling or solving.
/// Safe to share between threads.
class Diagnostics {
 public:
  Diagnostics() = default;
  Diagnostics(const Diagnostics& other) : warnings_(other.warnings()) {}
  Diagnostics& operator=(const Diagnostics& other) {
    if (this != &other) {
      auto copy = other.warnings();
      std::lock_guard lock(mutex_);
      warnings_ = std::move(copy);
    }
    return *this;
  }

  void warn(std::string message) {
    std::lock_guard lock(mutex_);
    warnings_.push_back(std::move(message));
  }

  std::vector<std::string> warnings() const {
    std::lock_guard lock(mutex_);
    return warnings_;
  }

  bool empty() const {
    std::lock_guard lock(mutex_);
    return warnings_.empty();
  }

 private:
  mutable std::mutex mutex_;
  std::vector<std::string> warnings_;
};

}  // namespace mdscm

#endif  // MDSCM_DIAGNOSTICS_HPP_
