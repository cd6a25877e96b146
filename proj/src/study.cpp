#include "cgraph/study.hpp"

#include <algorithm>
#include <chrono>

#include "cgraph/error.hpp"

namespace cgraph {

using nlohmann::json;
using nlohmann::ordered_json;

std::int64_t system_clock_ms() {
  using namespace std::chrono;
  return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

namespace {

ordered_json record_to_json(const ResponseRecord& r) {
  return {{"session_id", r.session_id},
          {"study_id", r.study_id},
          {"participant_id", r.participant_id},
          {"cursor", r.cursor},
          {"instance_id", r.instance_id},
          {"template_id", r.template_id},
          {"answer", r.answer},
          {"normalized_answer", r.normalized_answer},
          {"delivered_at", r.delivered_at},
          {"received_at", r.received_at},
          {"latency_ms", r.latency_ms},
          {"correct", r.correct}};
}

ResponseRecord record_from_json(const json& j) {
  ResponseRecord r;
  r.session_id = j.at("session_id").get<std::string>();
  r.study_id = j.at("study_id").get<std::string>();
  r.participant_id = j.value("participant_id", "");
  r.cursor = j.at("cursor").get<std::size_t>();
  r.instance_id = j.at("instance_id").get<std::string>();
  r.template_id = j.at("template_id").get<std::string>();
  r.answer = j.at("answer");
  r.normalized_answer = j.value("normalized_answer", "");
  r.delivered_at = j.at("delivered_at").get<std::int64_t>();
  r.received_at = j.at("received_at").get<std::int64_t>();
  r.latency_ms = j.at("latency_ms").get<std::int64_t>();
  r.correct = j.at("correct").get<bool>();
  return r;
}

double median(std::vector<std::int64_t> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t mid = v.size() / 2;
  if (v.size() % 2) return static_cast<double>(v[mid]);
  return (static_cast<double>(v[mid - 1]) + static_cast<double>(v[mid])) / 2.0;
}

std::vector<std::string_view> split_path(std::string_view path) {
  if (auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (pos < path.size()) {
    auto slash = path.find('/', pos);
    if (slash == std::string_view::npos) slash = path.size();
    if (slash > pos) parts.push_back(path.substr(pos, slash - pos));
    pos = slash + 1;
  }
  return parts;
}

HttpReply reply(int status, const ordered_json& body) { return {status, body.dump() + "\n"}; }

HttpReply error_reply(int status, std::string_view message) {
  return reply(status, ordered_json{{"error", message}});
}

}  // namespace

ordered_json StudyResults::to_json() const {
  ordered_json j;
  j["study_id"] = study_id;
  j["records"] = ordered_json::array();
  for (const auto& r : records) j["records"].push_back(record_to_json(r));
  j["aggregates"] = ordered_json::array();
  for (const auto& a : aggregates)
    j["aggregates"].push_back({{"template_id", a.template_id},
                               {"responses", a.responses},
                               {"correct", a.correct},
                               {"accuracy", a.accuracy},
                               {"median_latency_ms", a.median_latency_ms}});
  return j;
}

StudyResults StudyResults::from_json(const json& j) {
  try {
    StudyResults out;
    out.study_id = j.at("study_id").get<std::string>();
    for (const auto& r : j.at("records")) out.records.push_back(record_from_json(r));
    if (j.contains("aggregates"))
      for (const auto& a : j.at("aggregates"))
        out.aggregates.push_back({a.at("template_id").get<std::string>(),
                                  a.at("responses").get<std::size_t>(),
                                  a.at("correct").get<std::size_t>(),
                                  a.at("accuracy").get<double>(),
                                  a.at("median_latency_ms").get<double>()});
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed results export: ") + e.what());
  }
}

StudyService::StudyService(std::optional<std::filesystem::path> data_dir, Clock clock)
    : data_dir_(std::move(data_dir)), clock_(std::move(clock)) {
  if (!data_dir_) return;
  std::filesystem::create_directories(*data_dir_);
  auto path = *data_dir_ / "log.jsonl";
  if (std::ifstream in(path); in) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      json event;
      try {
        event = json::parse(line);
      } catch (const json::parse_error&) {
        // A torn final line from a crash mid-append is dropped.
        if (in.peek() == std::char_traits<char>::eof()) break;
        throw ParseError("corrupt log line " + std::to_string(lineno));
      }
      apply(event);
    }
  }
  log_.open(path, std::ios::app);
  if (!log_) throw Error("cannot open log " + path.string());
}

void StudyService::append(const ordered_json& event) {
  if (!log_.is_open()) return;
  log_ << event.dump() << '\n';
  log_.flush();
}

void StudyService::apply(const json& event) {
  const std::string type = event.at("event").get<std::string>();
  if (type == "study") {
    StudyBundle bundle = load_bundle(event.at("bundle"));
    std::string id = bundle.study_id;
    studies_.emplace(id, Study{std::move(bundle), {}});
  } else if (type == "session") {
    Session s;
    s.session_id = event.at("session_id").get<std::string>();
    s.study_id = event.at("study_id").get<std::string>();
    s.participant_id = event.at("participant_id").get<std::string>();
    s.started_at = event.at("started_at").get<std::int64_t>();
    studies_.at(s.study_id).sessions.push_back(s.session_id);
    next_session_ = std::max(next_session_, event.at("seq").get<std::size_t>() + 1);
    sessions_.emplace(s.session_id, std::move(s));
  } else if (type == "delivery") {
    session(event.at("session_id").get<std::string>()).delivered_at =
        event.at("at").get<std::int64_t>();
  } else if (type == "response") {
    ResponseRecord r = record_from_json(event.at("record"));
    Session& s = session(r.session_id);
    s.records.push_back(std::move(r));
    s.cursor += 1;
    s.delivered_at.reset();
    if (s.cursor == study(s.study_id).bundle.instances.size())
      s.finished_at = s.records.back().received_at;
  } else {
    throw ParseError("unknown log event " + type);
  }
}

const StudyService::Study& StudyService::study(std::string_view id) const {
  auto it = studies_.find(id);
  if (it == studies_.end()) throw NotFound("unknown study: " + std::string(id));
  return it->second;
}

StudyService::Session& StudyService::session(std::string_view id) {
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFound("unknown session: " + std::string(id));
  return it->second;
}

std::string StudyService::create_study(StudyBundle bundle) {
  std::lock_guard lock(mutex_);
  if (studies_.count(bundle.study_id)) throw Conflict("duplicate study id: " + bundle.study_id);
  ordered_json event{{"event", "study"}, {"bundle", bundle_to_json(bundle, true)}};
  append(event);
  std::string id = bundle.study_id;
  studies_.emplace(id, Study{std::move(bundle), {}});
  return id;
}

std::string StudyService::create_study(std::string_view document) {
  return create_study(parse_bundle(document));
}

bool StudyService::has_study(std::string_view study_id) const {
  std::lock_guard lock(mutex_);
  return studies_.find(study_id) != studies_.end();
}

std::string StudyService::create_session(std::string_view study_id, std::string participant_id) {
  std::lock_guard lock(mutex_);
  study(study_id);
  std::size_t seq = next_session_;
  ordered_json event{{"event", "session"},
                     {"session_id", "s" + std::to_string(seq)},
                     {"seq", seq},
                     {"study_id", study_id},
                     {"participant_id", participant_id},
                     {"started_at", clock_()}};
  append(event);
  apply(json::parse(event.dump()));
  return event["session_id"].get<std::string>();
}

NextTask StudyService::next_task(std::string_view session_id) {
  std::lock_guard lock(mutex_);
  Session& s = session(session_id);
  const auto& instances = study(s.study_id).bundle.instances;
  NextTask out;
  out.cursor = s.cursor;
  out.total = instances.size();
  if (s.cursor >= instances.size()) {
    out.done = true;
    return out;
  }
  const TaskInstance& inst = instances[s.cursor];
  if (!s.delivered_at) {
    ordered_json event{{"event", "delivery"},
                       {"session_id", s.session_id},
                       {"instance_id", inst.instance_id},
                       {"cursor", s.cursor},
                       {"at", clock_()}};
    append(event);
    apply(json::parse(event.dump()));
  }
  out.instance = instance_to_json(inst, false);
  return out;
}

SubmitResult StudyService::submit_answer(std::string_view session_id, std::string_view instance_id,
                                         const json& answer) {
  std::lock_guard lock(mutex_);
  Session& s = session(session_id);
  const Study& st = study(s.study_id);
  if (s.cursor >= st.bundle.instances.size()) throw Conflict("session is finished");
  const TaskInstance& inst = st.bundle.instances[s.cursor];
  if (!s.delivered_at) throw Conflict("no task outstanding; call next first");
  if (inst.instance_id != instance_id)
    throw Conflict("out-of-order answer: expected " + inst.instance_id + ", got " +
                   std::string(instance_id));

  ScoreResult scored = score(inst, answer_from_json(inst.answer_kind, answer));
  ResponseRecord r;
  r.session_id = s.session_id;
  r.study_id = s.study_id;
  r.participant_id = s.participant_id;
  r.cursor = s.cursor;
  r.instance_id = inst.instance_id;
  r.template_id = inst.template_id;
  r.answer = answer;
  r.normalized_answer = scored.normalized_answer;
  r.delivered_at = *s.delivered_at;
  r.received_at = clock_();
  r.latency_ms = r.received_at - r.delivered_at;
  r.correct = scored.correct;
  append(ordered_json{{"event", "response"}, {"record", record_to_json(r)}});
  apply(json{{"event", "response"}, {"record", json::parse(record_to_json(r).dump())}});

  SubmitResult out;
  out.cursor = s.cursor;
  out.normalized_answer = scored.normalized_answer;
  if (st.bundle.reveal_correctness) out.correct = scored.correct;
  return out;
}

StudyResults StudyService::export_results(std::string_view study_id) const {
  std::lock_guard lock(mutex_);
  const Study& st = study(study_id);
  StudyResults out;
  out.study_id = st.bundle.study_id;
  for (const auto& sid : st.sessions) {
    const auto& recs = sessions_.find(sid)->second.records;
    out.records.insert(out.records.end(), recs.begin(), recs.end());
  }
  std::vector<std::string> order;
  for (const auto& inst : st.bundle.instances)
    if (std::find(order.begin(), order.end(), inst.template_id) == order.end())
      order.push_back(inst.template_id);
  for (const auto& tid : order) {
    TemplateAggregate a;
    a.template_id = tid;
    std::vector<std::int64_t> latencies;
    for (const auto& r : out.records) {
      if (r.template_id != tid) continue;
      ++a.responses;
      a.correct += r.correct;
      latencies.push_back(r.latency_ms);
    }
    if (a.responses == 0) continue;
    a.accuracy = static_cast<double>(a.correct) / static_cast<double>(a.responses);
    a.median_latency_ms = median(std::move(latencies));
    out.aggregates.push_back(a);
  }
  return out;
}

ordered_json StudyService::participant_bundle(std::string_view study_id) const {
  std::lock_guard lock(mutex_);
  return bundle_to_json(study(study_id).bundle, false);
}

HttpReply StudyService::handle(std::string_view method, std::string_view path,
                               std::string_view body) {
  auto parts = split_path(path);
  auto parse_body = [&]() -> json {
    if (body.empty()) return json::object();
    try {
      return json::parse(body);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed request body: ") + e.what());
    }
  };
  try {
    const bool get = method == "GET";
    const bool post = method == "POST";
    if (post && parts.size() == 1 && parts[0] == "studies") {
      std::string id = create_study(load_bundle(parse_body()));
      return reply(200, {{"study_id", id}});
    }
    if (parts.size() == 3 && parts[0] == "studies") {
      if (post && parts[2] == "sessions") {
        json req = parse_body();
        if (!req.is_object()) throw ParseError("session request must be an object");
        std::string id = create_session(parts[1], req.value("participant_id", ""));
        return reply(200, {{"session_id", id}, {"study_id", parts[1]}});
      }
      if (get && parts[2] == "results") return reply(200, export_results(parts[1]).to_json());
      if (get && parts[2] == "bundle") return reply(200, participant_bundle(parts[1]));
    }
    if (parts.size() == 3 && parts[0] == "sessions") {
      if (get && parts[2] == "next") {
        NextTask next = next_task(parts[1]);
        ordered_json j{{"done", next.done}, {"cursor", next.cursor}, {"total", next.total}};
        if (!next.done) j["instance"] = next.instance;
        return reply(200, j);
      }
      if (post && parts[2] == "answer") {
        json req = parse_body();
        if (!req.is_object() || !req.contains("instance_id") || !req.at("instance_id").is_string() ||
            !req.contains("answer"))
          throw ParseError("answer request needs instance_id and answer");
        SubmitResult r = submit_answer(parts[1], req.at("instance_id").get<std::string>(),
                                       req.at("answer"));
        ordered_json j{{"accepted", r.accepted}, {"cursor", r.cursor},
                       {"normalized_answer", r.normalized_answer}};
        if (r.correct) j["correct"] = *r.correct;
        return reply(200, j);
      }
    }
    return error_reply(404, "no route for " + std::string(method) + " " + std::string(path));
  } catch (const NotFound& e) {
    return error_reply(404, e.what());
  } catch (const Conflict& e) {
    return error_reply(409, e.what());
  } catch (const Error& e) {
    return error_reply(400, e.what());
  } catch (const json::exception& e) {
    return error_reply(400, e.what());
  }
}

std::vector<ResponseRecord> rescore_divergences(const StudyBundle& bundle,
                                                const StudyResults& results) {
  std::vector<ResponseRecord> out;
  for (const auto& r : results.records) {
    const TaskInstance* inst = bundle.find_instance(r.instance_id);
    if (!inst) throw ValidationError("export names unknown instance " + r.instance_id);
    bool correct = false;
    try {
      correct = score(*inst, answer_from_json(inst->answer_kind, r.answer)).correct;
    } catch (const ParseError&) {
      correct = false;
    }
    if (correct != r.correct) out.push_back(r);
  }
  return out;
}

}  // namespace cgraph
