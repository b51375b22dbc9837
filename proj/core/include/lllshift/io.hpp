#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "lllshift/certificate.hpp"
#include "lllshift/instance.hpp"
#include "lllshift/pattern.hpp"
#include "lllshift/rational.hpp"
#include "lllshift/verifier.hpp"
#include "lllshift/window.hpp"

namespace lllshift {

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// Pattern file: one "element -> bit" entry per line; '#' starts a comment.
/// Throws ParseError on malformed lines or when no entry is present.
Pattern parse_pattern(GroupKind kind, std::string_view text);
std::string format_pattern(const Pattern& pattern);

/// Single-line pattern form "e1->b1;e2->b2" used inside other files.
std::string format_pattern_inline(const Pattern& pattern);
Pattern parse_pattern_inline(GroupKind kind, std::string_view text);

/// Certificate file: k=, N=, a=, b_lower=, M=, T=, verified= (one per line).
std::string format_certificate(const ParameterCertificate& cert, bool verified);
/// The stored verdict is ignored; p0 is recomputed from k and N.
ParameterCertificate parse_certificate(std::string_view text);

/// Contents of an instance description file.
struct InstanceDescription {
  Instance instance;
  std::size_t k = 0;
  std::size_t N = 0;
  std::uint64_t M = 0;
  std::uint64_t n_max = 0;
  std::optional<Rational> a;  // present when built from a certificate
  bool certified = false;
};

/// Header group=, k=, N=, M=, n_max=, a=, certified=, psi=, then D0= and
/// D<n>= offset lists. Lists are comma separated, except on Z^2 where the
/// elements themselves contain a comma and ';' separates them.
std::string format_instance(const InstanceDescription& description);
InstanceDescription parse_instance(std::string_view text);

/// The certificate-facing view of a certified description.
ParameterCertificate certificate_of(const InstanceDescription& description);

struct ColoringFile {
  WindowAssignment assignment;
  std::uint64_t seed = 0;
  std::uint64_t resamples = 0;
};

/// Header group=, window=, seed=, resamples=; then the cells. Z and Z^2 give a
/// 0/1 grid, one row per line (Z^2 rows by ascending y); F2 gives lines
/// "element bit" in enumeration order.
std::string format_coloring(const WindowAssignment& assignment, std::uint64_t seed, std::uint64_t resamples);
ColoringFile parse_coloring(std::string_view text);
/// Group named by a coloring file header, without parsing the body.
GroupKind coloring_group(std::string_view text);

std::string format_report(const VerificationReport& report, const Instance& instance);
std::string format_estimate(const FrequencyEstimate& estimate);

}  // namespace lllshift
