#pragma once

// Read-only JSON query API over one staircode. handle() is a pure function of
// the document and the request, so it can be tested without a socket and
// called from any number of server threads.

#include <map>
#include <string>

#include "staircode/betti.hpp"
#include "staircode/core.hpp"
#include "staircode/query.hpp"

namespace staircode {

struct ServiceResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

class QueryService {
 public:
  explicit QueryService(Staircode code, IndexOptions options = {});

  /// Routes: /api/meta, /api/staircode, /api/betti, /api/barcode?l=, /api/treegram?l=,
  /// /api/dim?g=. 400 on a malformed or non-positive-slope query, 404 otherwise.
  [[nodiscard]] ServiceResponse handle(const std::string& path,
                                       const std::map<std::string, std::string>& params) const;

  [[nodiscard]] const Staircode& staircode() const { return index_.staircode(); }

 private:
  FiberedQueryIndex index_;
  GradedBetti betti_;
  std::string meta_body_;
  std::string staircode_body_;
  std::string betti_body_;
};

}  // namespace staircode
