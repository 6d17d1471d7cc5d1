#include "streetlearn/engine/pano_cache.hpp"

namespace streetlearn {

PanoCache::PanoCache(std::shared_ptr<const PanoSource> source, std::size_t byte_budget)
    : source_(std::move(source)), budget_(byte_budget) {}

std::shared_ptr<const Image> PanoCache::get(const PanoRecord& record) {
  if (auto it = index_.find(record.id); it != index_.end()) {
    ++hits_;
    lru_.splice(lru_.begin(), lru_, it->second);
    return it->second->image;
  }
  ++loads_;
  auto image = std::make_shared<const Image>(source_->load(record));
  const std::size_t size = image->byte_size();
  if (size > budget_) return image;

  while (bytes_ + size > budget_ && !lru_.empty()) {
    bytes_ -= lru_.back().image->byte_size();
    index_.erase(lru_.back().id);
    lru_.pop_back();
    ++evictions_;
  }
  lru_.push_front({record.id, image});
  index_[record.id] = lru_.begin();
  bytes_ += size;
  return image;
}

void PanoCache::clear() {
  lru_.clear();
  index_.clear();
  bytes_ = 0;
}

}  // namespace streetlearn
