#include "easyvoice/textaccel/archive.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "easyvoice/textaccel/atomic_file.hpp"
#include "easyvoice/textaccel/text_util.hpp"

namespace easyvoice::textaccel {

MessageArchive::MessageArchive(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw ArchiveError("archive capacity must be at least 1");
}

MessageArchive::MessageArchive(std::vector<std::string> messages, std::size_t capacity) : MessageArchive(capacity) {
  // Replay oldest-first so the front of the input stays most recent.
  for (auto it = messages.rbegin(); it != messages.rend(); ++it) {
    if (!trim(*it).empty()) add(*it);
  }
}

void MessageArchive::add(std::string_view message) {
  const auto text = trim(message);
  if (text.empty()) throw ArchiveError("cannot archive an empty message");
  std::string entry(text);
  std::erase(messages_, entry);
  messages_.insert(messages_.begin(), std::move(entry));
  if (messages_.size() > capacity_) messages_.resize(capacity_);
}

std::string MessageArchive::pick(std::size_t index) {
  if (index >= messages_.size()) {
    throw ArchiveError("archive index " + std::to_string(index) + " out of range (size " +
                       std::to_string(messages_.size()) + ")");
  }
  std::rotate(messages_.begin(), messages_.begin() + static_cast<std::ptrdiff_t>(index),
              messages_.begin() + static_cast<std::ptrdiff_t>(index) + 1);
  return messages_.front();
}

MessageArchive archive_add(MessageArchive archive, std::string_view message) {
  archive.add(message);
  return archive;
}

std::pair<MessageArchive, std::string> archive_pick(MessageArchive archive, std::size_t index) {
  auto picked = archive.pick(index);
  return {std::move(archive), std::move(picked)};
}

MessageArchive load_archive_file(const std::string& path, std::size_t capacity) {
  if (!std::filesystem::exists(path)) return MessageArchive(capacity);
  std::ifstream in(path);
  if (!in) throw ArchiveError("cannot open archive file: " + path);
  try {
    const auto doc = nlohmann::json::parse(in);
    return MessageArchive(doc.at("messages").get<std::vector<std::string>>(), capacity);
  } catch (const nlohmann::json::exception& e) {
    throw ArchiveError(path + ": " + e.what());
  }
}

void save_archive_file(const MessageArchive& archive, const std::string& path) {
  const nlohmann::json doc = {{"messages", archive.messages()}};
  write_file_atomically(path, doc.dump(2) + "\n");
}

}  // namespace easyvoice::textaccel
