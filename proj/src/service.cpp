#include "nadeum/service.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <httplib.h>

#include "nadeum/codec.hpp"
#include "nadeum/surface.hpp"

namespace nadeum {

using codec::json;

namespace {

HttpResponse json_response(int status, const json& body) {
  return HttpResponse{status, "application/json", body.dump()};
}

HttpResponse error_response(int status, const std::string& kind, const std::string& message,
                            json extra = json::object()) {
  extra["error"] = kind;
  extra["message"] = message;
  return json_response(status, extra);
}

HttpResponse from_error(const Error& e) {
  if (const auto* pe = dynamic_cast<const ParseError*>(&e))
    return error_response(400, e.kind(), e.what(),
                          {{"offset", pe->offset()}, {"expected", pe->expected()}});
  if (const auto* ae = dynamic_cast<const ArityError*>(&e))
    return error_response(400, e.kind(), e.what(), {{"offset", ae->offset()}, {"name", ae->name()}});
  if (const auto* re = dynamic_cast<const RuleError*>(&e)) {
    json extra{{"reason", re->reason()}};
    if (re->rule()) extra["rule"] = std::string(rule_name(*re->rule()));
    return error_response(409, e.kind(), e.what(), extra);
  }
  if (dynamic_cast<const NothingToUndo*>(&e) || dynamic_cast<const IncompleteProof*>(&e))
    return error_response(409, e.kind(), e.what());
  if (dynamic_cast<const Withheld*>(&e)) return error_response(403, e.kind(), e.what());
  return error_response(400, e.kind(), e.what());
}

HttpResponse not_found(const std::string& what) { return error_response(404, "NotFound", what); }

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    std::size_t j = i;
    while (j < path.size() && path[j] != '/') ++j;
    if (j > i) parts.emplace_back(path.substr(i, j - i));
    i = j;
  }
  return parts;
}

std::size_t query_number(const QueryParams& q, const std::string& key, std::size_t fallback) {
  auto it = q.find(key);
  if (it == q.end()) return fallback;
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(key);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw FormatError("query parameter '" + key + "' must be a natural number");
  }
}

bool query_flag(const QueryParams& q, const std::string& key, bool fallback) {
  auto it = q.find(key);
  if (it == q.end()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw FormatError("query parameter '" + key + "' must be true or false");
}

json parse_body(std::string_view body) {
  if (body.empty()) return json::object();
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw FormatError(std::string("request body is not JSON: ") + e.what());
  }
}

json exercise_summary(const Exercise& ex) {
  return json{{"id", ex.id},
              {"title", ex.title},
              {"formula", print_formula(ex.formula)},
              {"policy", std::string(policy_name(ex.policy))},
              {"steps", ex.solution && ex.policy != RevealPolicy::Withheld
                            ? json(ex.solution->steps.size())
                            : json(nullptr)}};
}

std::int64_t epoch_seconds(std::chrono::system_clock::time_point t) {
  return std::chrono::duration_cast<std::chrono::seconds>(t.time_since_epoch()).count();
}

}  // namespace

// ---------------------------------------------------------------- options

std::chrono::seconds parse_duration(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty duration");
  std::int64_t unit = 1;
  switch (text.back()) {
    case 's':
      text.remove_suffix(1);
      break;
    case 'm':
      unit = 60;
      text.remove_suffix(1);
      break;
    case 'h':
      unit = 3600;
      text.remove_suffix(1);
      break;
    case 'd':
      unit = 86400;
      text.remove_suffix(1);
      break;
    default:
      break;
  }
  std::size_t pos = 0;
  std::string digits(text);
  long long v = std::stoll(digits, &pos);
  if (pos != digits.size() || v < 0) throw std::invalid_argument("bad duration");
  return std::chrono::seconds(v * unit);
}

ServiceOptions options_from_env() {
  ServiceOptions o;
  if (const char* addr = std::getenv("NADEUM_ADDR"); addr && *addr) o.address = addr;
  if (const char* ttl = std::getenv("NADEUM_SESSION_TTL"); ttl && *ttl) o.session_ttl = parse_duration(ttl);
  if (const char* dir = std::getenv("NADEUM_JOURNAL_DIR"); dir && *dir) o.journal_dir = dir;
  return o;
}

// ---------------------------------------------------------------- sessions

Service::Service(ServiceOptions options)
    : options_(std::move(options)), corpus_(load_corpus(options_.corpus_dir)) {
  std::random_device rd;
  id_state_ = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  if (options_.journal_dir) std::filesystem::create_directories(*options_.journal_dir);
}

std::string Service::new_id() {
  // splitmix64
  auto next = [this] {
    std::uint64_t z = (id_state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << next() << std::setw(16) << next();
  return out.str();
}

std::shared_ptr<Service::Session> Service::find(const std::string& id) {
  std::lock_guard lock(store_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::shared_ptr<Service::Session> Service::create(const Formula& root,
                                                  std::optional<std::string> exercise) {
  auto s = std::make_shared<Session>();
  s->history.root = root;
  s->exercise = std::move(exercise);
  s->created = s->last_active = std::chrono::system_clock::now();
  {
    std::lock_guard lock(store_mutex_);
    do {
      s->id = new_id();
    } while (sessions_.count(s->id));
    sessions_[s->id] = s;
  }
  json header{{"format", codec::kFormatVersion},
              {"type", "create"},
              {"id", s->id},
              {"root", codec::to_json(root)},
              {"exercise", s->exercise ? json(*s->exercise) : json(nullptr)},
              {"created", epoch_seconds(s->created)}};
  journal(*s, header.dump(), true);
  return s;
}

void Service::journal(const Session& s, const std::string& line, bool truncate) const {
  if (!options_.journal_dir) return;
  auto path = std::filesystem::path(*options_.journal_dir) / (s.id + ".jsonl");
  std::ofstream out(path, truncate ? std::ios::trunc : std::ios::app);
  out << line << '\n';
}

std::size_t Service::recover() {
  if (!options_.journal_dir) return 0;
  std::size_t restored = 0;
  for (const auto& entry : std::filesystem::directory_iterator(*options_.journal_dir)) {
    if (entry.path().extension() != ".jsonl") continue;
    std::ifstream in(entry.path());
    std::string line;
    auto s = std::make_shared<Session>();
    try {
      if (!std::getline(in, line)) continue;
      json header = json::parse(line);
      if (header.value("type", "") != "create") continue;
      s->id = header.at("id").get<std::string>();
      s->history.root = codec::formula_from_json(header.at("root"));
      if (header.contains("exercise") && header["exercise"].is_string())
        s->exercise = header["exercise"].get<std::string>();
      s->created = std::chrono::system_clock::time_point(
          std::chrono::seconds(header.value("created", std::int64_t{0})));
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        s->history.events.push_back(codec::event_from_json(json::parse(line)));
      }
      project(s->history);  // rejects journals that no longer replay
    } catch (const std::exception& e) {
      std::cerr << "nadeum: skipping journal " << entry.path() << ": " << e.what() << '\n';
      continue;
    }
    auto mtime = std::filesystem::last_write_time(entry.path());
    s->last_active = std::chrono::time_point_cast<std::chrono::system_clock::duration>(
        mtime - std::filesystem::file_time_type::clock::now() + std::chrono::system_clock::now());
    std::lock_guard lock(store_mutex_);
    sessions_[s->id] = s;
    ++restored;
  }
  return restored;
}

std::size_t Service::expire() {
  auto cutoff = std::chrono::system_clock::now() - options_.session_ttl;
  std::vector<std::string> dropped;
  {
    std::lock_guard lock(store_mutex_);
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      std::unique_lock session_lock(it->second->mutex, std::try_to_lock);
      if (session_lock.owns_lock() && it->second->last_active < cutoff) {
        dropped.push_back(it->first);
        session_lock.unlock();
        it = sessions_.erase(it);
      } else {
        ++it;
      }
    }
  }
  if (options_.journal_dir)
    for (const auto& id : dropped)
      std::filesystem::remove(std::filesystem::path(*options_.journal_dir) / (id + ".jsonl"));
  return dropped.size();
}

std::size_t Service::session_count() const {
  std::lock_guard lock(store_mutex_);
  return sessions_.size();
}

// ---------------------------------------------------------------- views

namespace {

json state_view(const std::string& id, const SessionHistory& h,
                const std::optional<std::string>& exercise) {
  ProofState state = project(h);
  json goals = json::array();
  for (const auto& g : state.goals) goals.push_back(codec::to_json(g));
  json applicable = json::array();
  json fresh = nullptr;
  if (!state.goals.empty()) {
    const Goal& g = state.goals.front();
    for (Rule r : applicable_rules(g)) applicable.push_back(std::string(rule_name(r)));
    std::vector<Formula> scope = g.assumptions;
    scope.push_back(g.conclusion);
    fresh = fresh_constant(scope);
  }
  return json{{"session", id},
              {"root", print_formula(h.root)},
              {"exercise", exercise ? json(*exercise) : json(nullptr)},
              {"step", state.step},
              {"complete", state.complete()},
              {"goals", goals},
              {"applicable", applicable},
              {"fresh", fresh}};
}

}  // namespace

// ---------------------------------------------------------------- routing

HttpResponse Service::handle(std::string_view method, std::string_view path,
                             const QueryParams& query, std::string_view body) {
  try {
    return route(method, split_path(path), query, body);
  } catch (const Error& e) {
    return from_error(e);
  } catch (const std::exception& e) {
    return error_response(500, "InternalError", e.what());
  }
}

HttpResponse Service::route(std::string_view method, const std::vector<std::string>& parts,
                            const QueryParams& query, std::string_view body) {
  const bool get = method == "GET";
  const bool post = method == "POST";

  if (parts.size() == 1 && parts[0] == "health" && get)
    return json_response(200, {{"status", "ok"}, {"sessions", session_count()}});

  if (!parts.empty() && parts[0] == "exercises") {
    if (!get) return error_response(405, "MethodNotAllowed", "exercises are read-only");
    if (parts.size() == 1) {
      json list = json::array();
      for (const auto& ex : corpus_) list.push_back(exercise_summary(ex));
      return json_response(200, list);
    }
    const Exercise* ex = find_exercise(corpus_, parts[1]);
    if (!ex) return not_found("no exercise " + parts[1]);
    if (parts.size() == 2) return json_response(200, exercise_summary(*ex));
    if (parts.size() == 3 && parts[2] == "reveal") {
      std::size_t available = ex->solution ? ex->solution->steps.size() : 0;
      std::size_t k = query_number(query, "steps", available);
      return json_response(200, codec::to_json(reveal(*ex, k)));
    }
    return not_found("unknown exercise resource");
  }

  if (parts.empty() || parts[0] != "sessions") return not_found("no such endpoint");

  if (parts.size() == 1) {
    if (!post) return error_response(405, "MethodNotAllowed", "use POST to create a session");
    json req = parse_body(body);
    Formula root;
    std::optional<std::string> exercise;
    if (req.contains("exercise") && req["exercise"].is_string()) {
      const Exercise* ex = find_exercise(corpus_, req["exercise"].get<std::string>());
      if (!ex) return not_found("no exercise " + req["exercise"].get<std::string>());
      root = ex->formula;
      exercise = ex->id;
    } else if (req.contains("formula")) {
      root = codec::formula_from_json(req["formula"]);
    } else {
      throw FormatError("expected \"formula\" or \"exercise\"");
    }
    auto s = create(root, exercise);
    std::lock_guard lock(s->mutex);
    return json_response(201, state_view(s->id, s->history, s->exercise));
  }

  auto s = find(parts[1]);
  if (!s) return not_found("no session " + parts[1]);
  std::lock_guard lock(s->mutex);
  s->last_active = std::chrono::system_clock::now();

  if (parts.size() == 2) {
    if (!get) return error_response(405, "MethodNotAllowed", "use GET");
    return json_response(200, state_view(s->id, s->history, s->exercise));
  }
  const std::string& action = parts[2];
  if (parts.size() != 3) return not_found("unknown session resource");

  if (action == "apply" && post) {
    RuleApplication r = codec::rule_application_from_json(parse_body(body));
    s->history = record(s->history, r);
    journal(*s, codec::to_json(s->history.events.back()).dump());
    return json_response(200, state_view(s->id, s->history, s->exercise));
  }
  if (action == "undo" && post) {
    s->history = undo(s->history);
    journal(*s, codec::to_json(s->history.events.back()).dump());
    return json_response(200, state_view(s->id, s->history, s->exercise));
  }
  if (action == "hint" && get) {
    SearchConfig cfg = options_.search;
    cfg.max_depth = query_number(query, "depth", cfg.max_depth);
    cfg.max_term_depth = query_number(query, "max_term_depth", cfg.max_term_depth);
    cfg.classical = query_flag(query, "classical", cfg.classical);
    cfg.time_budget = std::chrono::milliseconds(
        query_number(query, "time_budget", static_cast<std::size_t>(cfg.time_budget.count())));
    cfg.countermodel_max_universe =
        query_number(query, "countermodel_max_universe", cfg.countermodel_max_universe);
    try {
      validate(cfg);
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
    json out = json::array();
    for (const auto& f : hint(project(s->history), cfg)) out.push_back(codec::to_json(f));
    return json_response(200, out);
  }
  if (action == "trim" && post) return json_response(200, codec::to_json(trim(s->history)));
  if (action == "certificate" && get)
    return HttpResponse{200, "text/plain", export_certificate(trim(s->history))};
  if (action == "history" && get) return json_response(200, codec::to_json(s->history));
  return not_found("unknown session resource " + action);
}

// ---------------------------------------------------------------- transport

void serve(Service& service) {
  httplib::Server server;
  auto dispatch = [&service](const httplib::Request& req, httplib::Response& res) {
    QueryParams query;
    for (const auto& [k, v] : req.params) query[k] = v;
    HttpResponse r = service.handle(req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server.Get(".*", dispatch);
  server.Post(".*", dispatch);

  std::string host = service.options().address;
  int port = 8080;
  if (auto colon = host.rfind(':'); colon != std::string::npos) {
    port = std::stoi(host.substr(colon + 1));
    host = host.substr(0, colon);
  }
  std::thread reaper([&service, &server] {
    while (!server.is_running()) std::this_thread::sleep_for(std::chrono::milliseconds(50));
    while (server.is_running()) {
      std::this_thread::sleep_for(std::chrono::seconds(60));
      service.expire();
    }
  });
  reaper.detach();
  if (!server.listen(host, port)) throw std::runtime_error("cannot listen on " + service.options().address);
}

}  // namespace nadeum
