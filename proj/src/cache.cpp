#include "piforge/cache.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace piforge {

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find('\t', start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string::npos) return out;
        start = pos + 1;
    }
}

}  // namespace

std::size_t SequenceCache::load(TermStore& store) {
    usable_ = false;
    std::ifstream in(path_);
    if (!in) return 0;  // a missing cache is not an error
    std::string line;
    if (!std::getline(in, line) || line != kHeader) {
        warnings_.push_back("cache " + path_ + ": bad header, ignored");
        return 0;
    }
    struct Rec {
        std::string key;
        long n;
        ExactRat value;
    };
    std::vector<Rec> recs;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_tabs(line);
        try {
            if (f.size() != 4) throw DomainError("field count");
            if (hex64(fnv1a64(f[0] + "\t" + f[1] + "\t" + f[2])) != f[3]) throw DomainError("checksum");
            std::size_t used = 0;
            const long n = std::stol(f[1], &used);
            if (used != f[1].size() || n < 0) throw DomainError("index");
            recs.push_back({f[0], n, parse_rat(f[2])});
        } catch (const std::exception& e) {
            warnings_.push_back("cache " + path_ + ": corrupt record at line " + std::to_string(lineno) + " (" +
                                e.what() + "), cache ignored");
            return 0;
        }
    }
    for (const auto& r : recs) store.seed(r.key, r.n, r.value);
    usable_ = true;
    return recs.size();
}

std::size_t SequenceCache::save(const TermStore& store) {
    const auto recs = store.fresh_records();
    if (usable_ && recs.empty()) return 0;
    std::ofstream out(path_, usable_ ? std::ios::app : std::ios::trunc);
    if (!out) {
        warnings_.push_back("cache " + path_ + ": cannot write");
        return 0;
    }
    if (!usable_) out << kHeader << '\n';
    for (const auto& r : recs) {
        const std::string body = r.key + "\t" + std::to_string(r.n) + "\t" + to_string(r.value);
        out << body << '\t' << hex64(fnv1a64(body)) << '\n';
    }
    usable_ = true;
    return recs.size();
}

}  // namespace piforge
