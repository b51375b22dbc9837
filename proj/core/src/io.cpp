#include "lllshift/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "lllshift/errors.hpp"

namespace lllshift {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    out.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  if (trim(text).empty()) return out;
  while (true) {
    const auto pos = text.find(sep);
    out.push_back(trim(text.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return out;
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("bad value for " + std::string(what) + ": '" + std::string(s) + "'");
  }
  return v;
}

Bit parse_bit(std::string_view s) {
  s = trim(s);
  if (s == "0") return 0;
  if (s == "1") return 1;
  throw ParseError("bit must be 0 or 1: '" + std::string(s) + "'");
}

char list_separator(GroupKind kind) { return kind == GroupKind::Z2 ? ';' : ','; }

std::string format_list(const std::vector<GroupElement>& elements) {
  std::string out;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i > 0) out += list_separator(elements[i].kind());
    out += elements[i].to_string();
  }
  return out;
}

std::vector<GroupElement> parse_list(GroupKind kind, std::string_view text) {
  std::vector<GroupElement> out;
  for (auto item : split(text, list_separator(kind))) out.push_back(parse_element(kind, item));
  return out;
}

// key=value header lines; stops at the first line without '=' when `stop_at_body`.
struct Header {
  std::vector<std::pair<std::string, std::string>> entries;
  std::size_t body_begin = 0;

  const std::string* find(std::string_view key) const {
    for (const auto& [k, v] : entries) {
      if (k == key) return &v;
    }
    return nullptr;
  }
  const std::string& get(std::string_view key) const {
    const auto* v = find(key);
    if (!v) throw ParseError("missing header field '" + std::string(key) + "'");
    return *v;
  }
};

Header parse_header(const std::vector<std::string_view>& lines, bool stop_at_body) {
  Header h;
  std::size_t i = 0;
  for (; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      if (stop_at_body) break;
      throw ParseError("expected key=value, got '" + std::string(line) + "'");
    }
    h.entries.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }
  h.body_begin = i;
  return h;
}

Pattern::Entry parse_entry(GroupKind kind, std::string_view text) {
  const auto arrow = text.find("->");
  if (arrow == std::string_view::npos) throw ParseError("pattern entry must be 'element -> bit': '" + std::string(text) + "'");
  return {parse_element(kind, text.substr(0, arrow)), parse_bit(text.substr(arrow + 2))};
}

Pattern to_pattern(std::vector<Pattern::Entry> entries) {
  try {
    return Pattern(std::move(entries));
  } catch (const UsageError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

Pattern parse_pattern(GroupKind kind, std::string_view text) {
  std::vector<Pattern::Entry> entries;
  for (auto line : lines_of(text)) {
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    entries.push_back(parse_entry(kind, line));
  }
  if (entries.empty()) throw ParseError("pattern file has no entries");
  return to_pattern(std::move(entries));
}

std::string format_pattern(const Pattern& pattern) {
  std::string out;
  for (const auto& [g, bit] : pattern) out += g.to_string() + " -> " + std::to_string(bit) + "\n";
  return out;
}

std::string format_pattern_inline(const Pattern& pattern) {
  std::string out;
  for (const auto& [g, bit] : pattern) {
    if (!out.empty()) out += ';';
    out += g.to_string() + "->" + std::to_string(bit);
  }
  return out;
}

Pattern parse_pattern_inline(GroupKind kind, std::string_view text) {
  std::vector<Pattern::Entry> entries;
  for (auto item : split(text, ';')) entries.push_back(parse_entry(kind, item));
  if (entries.empty()) throw ParseError("empty inline pattern");
  return to_pattern(std::move(entries));
}

std::string format_certificate(const ParameterCertificate& cert, bool verified) {
  std::ostringstream out;
  out << "k=" << cert.k << "\n"
      << "N=" << cert.N << "\n"
      << "a=" << to_decimal_floor(cert.a) << "\n"
      << "b_lower=" << to_decimal_floor(cert.b_lower) << "\n"
      << "M=" << cert.M << "\n"
      << "T=" << cert.T << "\n"
      << "verified=" << (verified ? "true" : "false") << "\n";
  return out.str();
}

ParameterCertificate parse_certificate(std::string_view text) {
  const Header h = parse_header(lines_of(text), false);
  ParameterCertificate c;
  c.k = parse_u64(h.get("k"), "k");
  c.N = parse_u64(h.get("N"), "N");
  c.a = parse_rational(h.get("a"));
  c.b_lower = parse_rational(h.get("b_lower"));
  c.M = parse_u64(h.get("M"), "M");
  c.T = parse_u64(h.get("T"), "T");
  if (c.k == 0 || c.N == 0) throw ParseError("certificate needs positive k and N");
  c.p0 = occurrence_weight(c.k, c.N);
  return c;
}

std::string format_instance(const InstanceDescription& d) {
  std::ostringstream out;
  out << "group=" << to_string(d.instance.kind()) << "\n"
      << "k=" << d.k << "\n"
      << "N=" << d.N << "\n"
      << "M=" << d.M << "\n"
      << "n_max=" << d.n_max << "\n";
  if (d.a) out << "a=" << to_decimal_floor(*d.a) << "\n";
  out << "certified=" << (d.certified ? "true" : "false") << "\n";
  const auto* occ = d.instance.occurrence();
  out << "psi=" << (occ ? format_pattern_inline(occ->psi) : std::string()) << "\n";
  if (occ) out << "D0=" << format_list(occ->D0) << "\n";
  for (const auto* p : d.instance.periods()) out << "D" << p->n << "=" << format_list(p->Dn) << "\n";
  return out.str();
}

InstanceDescription parse_instance(std::string_view text) {
  const Header h = parse_header(lines_of(text), false);
  const GroupKind kind = parse_group_kind(h.get("group"));
  const std::size_t k = parse_u64(h.get("k"), "k");
  const std::size_t N = parse_u64(h.get("N"), "N");
  const std::uint64_t M = parse_u64(h.get("M"), "M");
  const std::uint64_t n_max = parse_u64(h.get("n_max"), "n_max");
  std::optional<Rational> a;
  if (const auto* v = h.find("a")) a = parse_rational(*v);
  const auto* certified = h.find("certified");
  const auto* psi_text = h.find("psi");

  try {
    std::optional<OccurrenceFamily> occ;
    if (psi_text && !psi_text->empty()) {
      const Pattern psi = parse_pattern_inline(kind, *psi_text);
      occ = make_occurrence_family(psi, parse_list(kind, h.get("D0")));
      if (occ->k != k || occ->N != N) throw ParseError("psi/D0 sizes disagree with k= and N=");
    } else if (h.find("D0")) {
      throw ParseError("D0 given without psi");
    }
    std::vector<PeriodFamily> periods;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      periods.push_back(make_period_family(kind, n, M, parse_list(kind, h.get("D" + std::to_string(n)))));
    }
    return InstanceDescription{Instance(kind, std::move(occ), std::move(periods)), k, N, M, n_max, a,
                               certified && *certified == "true"};
  } catch (const UsageError& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
}

ParameterCertificate certificate_of(const InstanceDescription& d) {
  if (!d.a) throw UsageError("instance carries no certificate parameters");
  ParameterCertificate c;
  c.k = d.k;
  c.N = d.N;
  c.a = *d.a;
  c.M = d.M;
  c.p0 = occurrence_weight(d.k, d.N);
  c.b_lower = parse_rational(to_decimal_floor(b_value(c.a, c.k, c.N)));
  c.T = default_truncation(c.a, c.M);
  return c;
}

std::string format_coloring(const WindowAssignment& f, std::uint64_t seed, std::uint64_t resamples) {
  const Window& w = f.window();
  std::string out;
  out += "group=" + std::string(to_string(w.kind())) + "\n";
  out += "window=" + w.to_string() + "\n";
  out += "seed=" + std::to_string(seed) + "\n";
  out += "resamples=" + std::to_string(resamples) + "\n";
  switch (w.kind()) {
    case GroupKind::Z:
      for (Bit b : f.bits()) out += static_cast<char>('0' + b);
      out += "\n";
      break;
    case GroupKind::Z2: {
      const auto width = static_cast<std::size_t>(w.width());
      for (std::size_t i = 0; i < f.size(); ++i) {
        out += static_cast<char>('0' + f.bit(i));
        if ((i + 1) % width == 0) out += "\n";
      }
      break;
    }
    case GroupKind::F2:
      for (std::size_t i = 0; i < f.size(); ++i) {
        out += w.element(i).to_string() + " " + std::to_string(f.bit(i)) + "\n";
      }
      break;
  }
  return out;
}

GroupKind coloring_group(std::string_view text) {
  return parse_group_kind(parse_header(lines_of(text), true).get("group"));
}

ColoringFile parse_coloring(std::string_view text) {
  const auto lines = lines_of(text);
  const Header h = parse_header(lines, true);
  const GroupKind kind = parse_group_kind(h.get("group"));
  auto window = std::make_shared<const Window>(Window::parse(kind, h.get("window")));
  const std::uint64_t seed = parse_u64(h.get("seed"), "seed");
  const std::uint64_t resamples = parse_u64(h.get("resamples"), "resamples");

  std::vector<Bit> bits(window->size(), 0);
  std::size_t filled = 0;
  for (std::size_t i = h.body_begin; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    if (kind == GroupKind::F2) {
      const auto space = line.find(' ');
      if (space == std::string_view::npos) throw ParseError("F2 coloring line must be 'element bit'");
      const auto idx = window->index_of(parse_element(kind, line.substr(0, space)));
      if (!idx) throw ParseError("coloring cell outside the window");
      if (*idx != filled) throw ParseError("F2 coloring lines must follow enumeration order");
      bits[*idx] = parse_bit(line.substr(space + 1));
      ++filled;
      continue;
    }
    for (char c : line) {
      if (filled >= bits.size()) throw ParseError("coloring has more cells than its window");
      bits[filled++] = parse_bit(std::string_view(&c, 1));
    }
  }
  if (filled != bits.size()) throw ParseError("coloring has fewer cells than its window");
  return ColoringFile{WindowAssignment(window, std::move(bits)), seed, resamples};
}

std::string format_report(const VerificationReport& r, const Instance& instance) {
  std::ostringstream out;
  out << "status=" << (r.clean() ? "clean" : "dirty") << "\n"
      << "violated=" << r.violated.size() << "\n"
      << "freeness_failures=" << r.freeness_failures.size() << "\n"
      << "psi_missing=" << r.psi_missing.size() << "\n"
      << "checked_occurrence=" << r.checked.occurrence_checked << "\n"
      << "checked_period=" << r.checked.period_checked << "\n"
      << "boundary=only constraints fully inside the window are checked\n";
  for (const auto& c : r.violated) {
    const Family& family = instance.family(c.family);
    out << "violated family=" << c.family;
    if (const auto* p = std::get_if<PeriodFamily>(&family)) {
      out << " kind=period n=" << p->n;
    } else {
      out << " kind=occurrence";
    }
    out << " translate=" << c.translate.to_string() << "\n";
  }
  for (const auto& f : r.freeness_failures) {
    out << "freeness n=" << f.n << " translate=" << f.translate.to_string() << "\n";
  }
  for (const auto& g : r.psi_missing) out << "psi_missing translate=" << g.to_string() << "\n";
  return out.str();
}

std::string format_estimate(const FrequencyEstimate& e) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(6);
  out << "pattern=" << format_pattern_inline(e.pattern) << ", location=" << e.location.to_string()
      << ", runs=" << e.runs << ", hits=" << e.hits << ", freq=" << e.frequency << ", ci=[" << (e.frequency - e.half_width)
      << "," << (e.frequency + e.half_width) << "], failures=" << e.failures();
  return out.str();
}

}  // namespace lllshift
