#pragma once

#include <map>
#include <memory>
#include <mutex>

namespace nckit::detail {

// Map whose entries are computed once and never replaced. Concurrent callers
// may race to compute the same key; the first stored value wins, so readers
// always see a complete value.
template <typename Key, typename Value> class WriteOnceCache {
public:
  template <typename Make>
  std::shared_ptr<const Value> get(const Key &key, Make &&make) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = values_.find(key); it != values_.end())
        return it->second;
    }
    auto fresh = std::make_shared<const Value>(make());
    std::lock_guard lock(mutex_);
    return values_.try_emplace(key, std::move(fresh)).first->second;
  }

private:
  std::mutex mutex_;
  std::map<Key, std::shared_ptr<const Value>> values_;
};

} // namespace nckit::detail
