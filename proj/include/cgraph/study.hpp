#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cgraph/bundle.hpp"

namespace cgraph {

/// Milliseconds since the Unix epoch, UTC.
using Clock = std::function<std::int64_t()>;
std::int64_t system_clock_ms();

struct ResponseRecord {
  std::string session_id;
  std::string study_id;
  std::string participant_id;
  std::size_t cursor = 0;
  std::string instance_id;
  std::string template_id;
  nlohmann::json answer;  // as submitted
  std::string normalized_answer;
  std::int64_t delivered_at = 0;
  std::int64_t received_at = 0;
  std::int64_t latency_ms = 0;
  bool correct = false;

  friend bool operator==(const ResponseRecord&, const ResponseRecord&) = default;
};

struct TemplateAggregate {
  std::string template_id;
  std::size_t responses = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  double median_latency_ms = 0.0;

  friend bool operator==(const TemplateAggregate&, const TemplateAggregate&) = default;
};

struct StudyResults {
  std::string study_id;
  std::vector<ResponseRecord> records;
  std::vector<TemplateAggregate> aggregates;

  nlohmann::ordered_json to_json() const;
  static StudyResults from_json(const nlohmann::json& j);
  friend bool operator==(const StudyResults&, const StudyResults&) = default;
};

struct NextTask {
  bool done = false;
  std::size_t cursor = 0;
  std::size_t total = 0;
  /// Participant view of the instance; never carries ground truth.
  nlohmann::ordered_json instance;
};

struct SubmitResult {
  bool accepted = true;
  std::optional<bool> correct;  // only when the study reveals correctness
  std::size_t cursor = 0;
  std::string normalized_answer;
};

struct HttpReply {
  int status = 200;
  std::string body;
};

/// Response records are appended to `<data_dir>/log.jsonl`, one event per
/// line, and replayed on construction. Without a data dir nothing persists.
class StudyService {
 public:
  explicit StudyService(std::optional<std::filesystem::path> data_dir = std::nullopt,
                        Clock clock = system_clock_ms);

  std::string create_study(StudyBundle bundle);
  std::string create_study(std::string_view bundle_document);
  bool has_study(std::string_view study_id) const;

  std::string create_session(std::string_view study_id, std::string participant_id = {});
  NextTask next_task(std::string_view session_id);
  /// Throws Conflict when `instance_id` is not the delivered, outstanding
  /// instance; ParseError when the answer does not fit its kind.
  SubmitResult submit_answer(std::string_view session_id, std::string_view instance_id,
                             const nlohmann::json& answer);
  StudyResults export_results(std::string_view study_id) const;
  /// Participant view: the bundle without its answer key.
  nlohmann::ordered_json participant_bundle(std::string_view study_id) const;

  /// Routes one HTTP request to the operations above.
  HttpReply handle(std::string_view method, std::string_view path, std::string_view body);

 private:
  struct Study {
    StudyBundle bundle;
    std::vector<std::string> sessions;
  };
  struct Session {
    std::string session_id;
    std::string study_id;
    std::string participant_id;
    std::size_t cursor = 0;
    std::int64_t started_at = 0;
    std::optional<std::int64_t> finished_at;
    std::optional<std::int64_t> delivered_at;  // for the instance at the cursor
    std::vector<ResponseRecord> records;
  };

  void apply(const nlohmann::json& event);
  void append(const nlohmann::ordered_json& event);
  const Study& study(std::string_view id) const;
  Session& session(std::string_view id);

  std::optional<std::filesystem::path> data_dir_;
  Clock clock_;
  mutable std::mutex mutex_;
  std::ofstream log_;
  std::map<std::string, Study, std::less<>> studies_;
  std::map<std::string, Session, std::less<>> sessions_;
  std::size_t next_session_ = 1;
};

/// Recomputes correctness of every record against the bundle's answer key and
/// returns the records whose stored flag disagrees.
std::vector<ResponseRecord> rescore_divergences(const StudyBundle& bundle,
                                                const StudyResults& results);

}  // namespace cgraph
