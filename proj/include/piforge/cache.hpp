#pragma once

#include "piforge/sequences.hpp"

#include <string>
#include <vector>

namespace piforge {

/// Append-only file of exact sequence terms:
///
///   piforge-cache v1
///   <key>\t<n>\t<value>\t<fnv1a-64 hex of "key\tn\tvalue">
///
/// A file with a bad header or any bad record is ignored as a whole.
class SequenceCache {
public:
    static constexpr const char* kHeader = "piforge-cache v1";

    explicit SequenceCache(std::string path) : path_(std::move(path)) {}

    /// Reads the file into the store's seeds. Returns the number of records
    /// loaded; problems are reported through warnings() and load nothing.
    std::size_t load(TermStore& store);

    /// Appends records computed during this run. A missing or rejected file
    /// is rewritten from scratch.
    std::size_t save(const TermStore& store);

    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    std::string path_;
    bool usable_ = false;  // the existing file passed validation
    std::vector<std::string> warnings_;
};

std::uint64_t fnv1a64(const std::string& data);

}  // namespace piforge
