#pragma once

#include <string>

#include "nonflat/free_eval.hpp"
#include "nonflat/io.hpp"

namespace nonflat {

enum class CertificateKind { witness, nonflat };

struct CertifyOptions {
  std::size_t v1_dim = 1;
  int depth = 5;
  int truncation = 8;
  std::uint64_t seed = 7;
  int retries = 50;
  long long bound = 3;
  std::size_t slice_budget = kDefaultSliceBudget;
};

inline constexpr const char* kSemisimpleReason = "A semisimple: Coend V projective, no non-flatness evidence";

struct CertifyOutcome {
  Json certificate;
  Verdict verdict = Verdict::inconclusive;
  std::string reason;
};

/// Throws InvalidArgument when depth > truncation - 2 and ParseError when the
/// Hopf data fails its axioms.
CertifyOutcome certify(const HopfData& h, const CertifyOptions& options, CertificateKind kind);

/// Newline-terminated, two-space indented; the byte form recheck compares against.
std::string render(const Json& certificate);

std::string to_verdict_string(Verdict v);

struct RecheckResult {
  /// 0 when every stored field re-derives, 1 on the first divergence, 2 on unreadable input.
  int status = 0;
  /// JSON path of the first divergent field, empty when status is 0.
  std::string field;
  std::string message;
};

RecheckResult recheck(const std::string& certificate_text, const Json& hopf_json);

/// Path of the first difference between two documents ("" when equal).
std::string first_difference(const Json& a, const Json& b, const std::string& path = "");

}  // namespace nonflat
