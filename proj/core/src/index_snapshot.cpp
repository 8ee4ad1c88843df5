#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "raccoon/index.hpp"

namespace raccoon {

namespace {

constexpr char kMagic[8] = {'R', 'C', 'C', 'N', 'I', 'D', 'X', '\0'};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void u32(std::uint32_t v) {
    char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out_.write(buf, 4);
  }
  void u64(std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out_.write(buf, 8);
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    u64(bits);
  }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::uint32_t u32() {
    char buf[4];
    read(buf, 4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(buf[i]);
    return v;
  }
  std::uint64_t u64() {
    char buf[8];
    read(buf, 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(buf[i]);
    return v;
  }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  double f64() {
    const std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }
  std::string str() {
    const std::uint32_t n = u32();
    std::string s(n, '\0');
    if (n > 0) read(s.data(), n);
    return s;
  }

 private:
  void read(char* buf, std::streamsize n) {
    in_.read(buf, n);
    if (in_.gcount() != n) throw std::runtime_error("index snapshot is truncated");
  }

  std::istream& in_;
};

void write_entry(Writer& w, const GazetteerEntry& entry) {
  w.i64(entry.id);
  w.str(entry.name);
  w.u32(static_cast<std::uint32_t>(entry.alternate_names.size()));
  for (const auto& alt : entry.alternate_names) w.str(alt);
  w.u32(static_cast<std::uint32_t>(entry.abbreviations.size()));
  for (const auto& abbr : entry.abbreviations) w.str(abbr);
  w.f64(entry.latitude);
  w.f64(entry.longitude);
  w.str(entry.country_code);
  w.str(entry.admin1);
  w.u32(static_cast<std::uint32_t>(static_cast<unsigned char>(entry.feature_class)));
  w.str(entry.feature_code);
  w.i64(entry.population);
}

GazetteerEntry read_entry(Reader& r) {
  GazetteerEntry entry;
  entry.id = r.i64();
  entry.name = r.str();
  entry.alternate_names.resize(r.u32());
  for (auto& alt : entry.alternate_names) alt = r.str();
  entry.abbreviations.resize(r.u32());
  for (auto& abbr : entry.abbreviations) abbr = r.str();
  entry.latitude = r.f64();
  entry.longitude = r.f64();
  entry.country_code = r.str();
  entry.admin1 = r.str();
  entry.feature_class = static_cast<char>(r.u32());
  entry.feature_code = r.str();
  entry.population = r.i64();
  return entry;
}

}  // namespace

void save_index_snapshot(const SearchIndex& index, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write index snapshot: " + path);

  out.write(kMagic, sizeof(kMagic));
  Writer w(out);
  w.u32(kIndexSnapshotVersion);

  const auto& entries = index.source().entries();
  w.u64(entries.size());
  for (const auto& entry : entries) write_entry(w, entry);

  w.f64(index.avg_doc_length());
  for (const auto& entry : entries) {
    w.u32(index.doc_length(entry.id));
  }

  // Tokens in sorted order so snapshot bytes are stable.
  std::vector<const std::string*> tokens;
  tokens.reserve(index.all_postings().size());
  for (const auto& [token, list] : index.all_postings()) tokens.push_back(&token);
  std::sort(tokens.begin(), tokens.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });
  w.u64(tokens.size());
  for (const std::string* token : tokens) {
    w.str(*token);
    const auto& postings = index.all_postings().at(*token);
    w.u64(postings.size());
    for (const Posting& p : postings) {
      w.i64(p.entry_id);
      w.u32(p.term_frequency);
    }
  }

  if (!out) throw std::runtime_error("failed while writing index snapshot: " + path);
}

SearchIndex load_index_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open index snapshot: " + path);

  char magic[8];
  in.read(magic, sizeof(magic));
  if (in.gcount() != sizeof(magic) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error(path + " is not an index snapshot");
  }
  Reader r(in);
  const std::uint32_t version = r.u32();
  if (version != kIndexSnapshotVersion) {
    throw std::runtime_error("index snapshot " + path + " has format version " +
                             std::to_string(version) + ", expected " +
                             std::to_string(kIndexSnapshotVersion));
  }

  const std::uint64_t entry_count = r.u64();
  std::vector<GazetteerEntry> entries;
  entries.reserve(entry_count);
  for (std::uint64_t i = 0; i < entry_count; ++i) entries.push_back(read_entry(r));

  SearchIndex index;
  index.source_ = std::make_shared<Gazetteer>(std::move(entries));
  index.avg_doc_length_ = r.f64();
  index.doc_lengths_.resize(entry_count);
  for (auto& length : index.doc_lengths_) length = r.u32();

  const std::uint64_t token_count = r.u64();
  index.postings_.reserve(token_count);
  for (std::uint64_t i = 0; i < token_count; ++i) {
    std::string token = r.str();
    std::vector<Posting> list(r.u64());
    for (auto& posting : list) {
      posting.entry_id = r.i64();
      posting.term_frequency = r.u32();
    }
    index.postings_.emplace(std::move(token), std::move(list));
  }
  return index;
}

}  // namespace raccoon
