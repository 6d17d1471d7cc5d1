#pragma once

#include <cstddef>
#include <list>
#include <memory>
#include <string>
#include <unordered_map>

#include "streetlearn/engine/pano_source.hpp"

namespace streetlearn {

// Least-recently-used cache of decoded panoramas under a byte budget. A
// budget of 0 disables caching; every get() then loads from the source.
class PanoCache {
 public:
  PanoCache(std::shared_ptr<const PanoSource> source, std::size_t byte_budget);

  std::shared_ptr<const Image> get(const PanoRecord& record);

  bool contains(const std::string& id) const { return index_.count(id) != 0; }
  std::size_t bytes() const { return bytes_; }
  std::size_t byte_budget() const { return budget_; }
  std::size_t entries() const { return lru_.size(); }
  std::size_t hits() const { return hits_; }
  std::size_t loads() const { return loads_; }
  std::size_t evictions() const { return evictions_; }
  void clear();

 private:
  struct Entry {
    std::string id;
    std::shared_ptr<const Image> image;
  };

  std::shared_ptr<const PanoSource> source_;
  std::size_t budget_;
  std::size_t bytes_ = 0;
  std::list<Entry> lru_;  // front = most recently used
  std::unordered_map<std::string, std::list<Entry>::iterator> index_;
  std::size_t hits_ = 0;
  std::size_t loads_ = 0;
  std::size_t evictions_ = 0;
};

}  // namespace streetlearn
