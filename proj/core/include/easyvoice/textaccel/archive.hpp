#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace easyvoice::textaccel {

inline constexpr std::size_t kDefaultArchiveCapacity = 50;

class ArchiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Recently spoken messages, most recent first, without duplicates.
class MessageArchive {
 public:
  explicit MessageArchive(std::size_t capacity = kDefaultArchiveCapacity);
  MessageArchive(std::vector<std::string> messages, std::size_t capacity);

  const std::vector<std::string>& messages() const noexcept { return messages_; }
  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return messages_.size(); }
  bool empty() const noexcept { return messages_.empty(); }

  /// Moves the trimmed message to the front, dropping an equal older copy
  /// and evicting the oldest entry past capacity. Throws ArchiveError for a
  /// blank message and leaves the archive unchanged.
  void add(std::string_view message);

  /// Returns the message at index and moves it to the front.
  std::string pick(std::size_t index);

  friend bool operator==(const MessageArchive&, const MessageArchive&) = default;

 private:
  std::vector<std::string> messages_;
  std::size_t capacity_;
};

// Value-returning forms.
MessageArchive archive_add(MessageArchive archive, std::string_view message);
std::pair<MessageArchive, std::string> archive_pick(MessageArchive archive, std::size_t index);

/// Reads `{"messages": [...]}`. A missing file yields an empty archive.
MessageArchive load_archive_file(const std::string& path, std::size_t capacity = kDefaultArchiveCapacity);
void save_archive_file(const MessageArchive& archive, const std::string& path);

}  // namespace easyvoice::textaccel
