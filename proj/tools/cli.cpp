#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hybridlog/errors.hpp"
#include "hybridlog/eval/benchmark.hpp"
#include "hybridlog/eval/ground_truth.hpp"
#include "hybridlog/eval/loghub.hpp"
#include "hybridlog/eval/metrics.hpp"
#include "hybridlog/eval/synthetic.hpp"
#include "hybridlog/eval/tuning.hpp"
#include "hybridlog/feedback.hpp"
#include "hybridlog/output.hpp"
#include "serve.hpp"

namespace hybridlog::cli {

namespace fs = std::filesystem;

FeedbackSpec parse_feedback(const std::string& text) {
  FeedbackSpec f;
  if (text.empty()) return f;
  if (text == "tty") {
    f.kind = FeedbackSpec::Kind::Tty;
  } else if (text == "oracle") {
    f.kind = FeedbackSpec::Kind::Oracle;
  } else if (text.rfind("script:", 0) == 0 && text.size() > 7) {
    f.kind = FeedbackSpec::Kind::Script;
    f.path = text.substr(7);
  } else if (text.rfind("serve:", 0) == 0) {
    f.kind = FeedbackSpec::Kind::Serve;
    try {
      std::size_t used = 0;
      const int port = std::stoi(text.substr(6), &used);
      if (used != text.size() - 6 || port < 0 || port > 65535) throw std::out_of_range("port");
      f.port = port;
    } catch (const std::exception&) {
      throw ConfigError("feedback", "bad port in '" + text + "'");
    }
  } else {
    throw ConfigError("feedback", "expected tty, script:<path> or serve:<port>, got '" + text + "'");
  }
  return f;
}

std::optional<std::size_t> parse_query_limit(const std::string& text) {
  if (text == "unlimited") return std::nullopt;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size() || v < 0) throw std::out_of_range("limit");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("query-limit", "expected a non-negative integer or 'unlimited', got '" + text + "'");
  }
}

std::string format_run_report(const Session& session, const RunOptions& opts) {
  const auto& st = session.stats();
  const auto& e = session.engine();
  std::array<std::size_t, 3> groups_by_type{};
  for (const auto& g : e.groups()) ++groups_by_type[static_cast<std::size_t>(g.log_type)];
  std::ostringstream out;
  out << std::fixed << std::setprecision(6);
  out << "mode: " << (opts.mode == UpdateMode::Guided ? "guided" : "auto") << '\n';
  out << "input: " << opts.input << '\n';
  out << "lines: " << st.lines << '\n';
  out << "dropped_lines: " << st.dropped_lines << '\n';
  out << "messages: " << st.messages << '\n';
  for (auto t : kAllLogTypes) {
    std::string name(to_string(t));
    for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out << "messages_" << name << ": " << st.per_type[static_cast<std::size_t>(t)] << '\n';
  }
  out << "flagged_messages: " << st.flagged_messages << '\n';
  out << "groups: " << e.groups().size() << '\n';
  for (auto t : kAllLogTypes) {
    std::string name(to_string(t));
    for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out << "groups_" << name << ": " << groups_by_type[static_cast<std::size_t>(t)] << '\n';
  }
  out << "tree_nodes: " << e.tree().node_count() << '\n';
  out << "query_count: " << e.queries_asked() << '\n';
  out << "query_limit: " << (opts.query_limit ? std::to_string(*opts.query_limit) : "unlimited") << '\n';
  out << "unasked_merges: " << e.unasked_merges() << '\n';
  out << "channel_failure: " << (e.channel_failed() ? e.channel_error() : "none") << '\n';
  out << "time_segment_s: " << st.times.segment << '\n';
  out << "time_tokenize_s: " << st.times.tokenize << '\n';
  out << "time_aggregate_s: " << st.times.aggregate << '\n';
  out << "time_identify_s: " << st.times.identify << '\n';
  out << "time_update_s: " << st.times.update << '\n';
  out << "time_total_s: " << st.times.total() << '\n';
  return out.str();
}

namespace {

SourceConfig resolve_config(const std::string& path) {
  std::string p = path;
  if (p.empty()) {
    if (const char* env = std::getenv("HUE_CONFIG")) p = env;
  }
  if (p.empty()) throw ConfigError("config", "no config file (use --config or set HUE_CONFIG)");
  return load_config(p);
}

// Input and the interactive prompt must not share stdin.
struct InputStream {
  std::unique_ptr<std::ifstream> file;
  std::istream* stream = nullptr;
};

InputStream open_input(const std::string& path, std::istream& in) {
  InputStream s;
  if (path.empty() || path == "-") {
    s.stream = &in;
    return s;
  }
  s.file = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*s.file) throw IoError("cannot read input " + path);
  s.stream = s.file.get();
  return s;
}

struct Feedback {
  std::unique_ptr<FeedbackChannel> channel;
  std::unique_ptr<std::ifstream> tty_in;
  serve::ServeChannel* serve = nullptr;
  std::unique_ptr<serve::QueryServer> server;
};

Feedback make_feedback(const RunOptions& opts, const FeedbackSpec& spec, std::istream& in, std::ostream& err,
                       const GroundTruth* truth) {
  Feedback fb;
  if (opts.mode != UpdateMode::Guided) {
    if (spec.kind == FeedbackSpec::Kind::Serve) throw ConfigError("feedback", "serve needs --mode guided");
    return fb;
  }
  switch (spec.kind) {
    case FeedbackSpec::Kind::None:
      throw ConfigError("feedback", "guided mode needs --feedback");
    case FeedbackSpec::Kind::Tty: {
      std::istream* answers = &in;
      if (opts.input.empty() || opts.input == "-") {
        fb.tty_in = std::make_unique<std::ifstream>("/dev/tty");
        if (!*fb.tty_in) throw IoError("cannot open /dev/tty for prompts while reading stdin");
        answers = fb.tty_in.get();
      }
      fb.channel = std::make_unique<TtyChannel>(*answers, err);
      break;
    }
    case FeedbackSpec::Kind::Script:
      fb.channel = std::make_unique<ScriptedChannel>(ScriptedChannel::load(spec.path));
      break;
    case FeedbackSpec::Kind::Oracle: {
      if (!truth) throw ConfigError("feedback", "the oracle is only available to eval");
      std::unordered_map<MessageId, std::string> labels;
      for (const auto& [id, e] : truth->entries) labels[id] = e.gt_group;
      fb.channel = std::make_unique<OracleChannel>(std::move(labels));
      break;
    }
    case FeedbackSpec::Kind::Serve: {
      auto ch = std::make_unique<serve::ServeChannel>();
      fb.serve = ch.get();
      fb.server = std::make_unique<serve::QueryServer>(*ch);
      if (!fb.server->bind(opts.host, spec.port))
        throw IoError("cannot bind " + opts.host + ":" + std::to_string(spec.port) + " (port busy?)");
      fb.server->start();
      err << "query endpoint on http://" << opts.host << ':' << fb.server->port() << "/api\n";
      fb.channel = std::move(ch);
      break;
    }
  }
  return fb;
}

Session run_session(const SourceConfig& cfg, const RunOptions& opts, Feedback& fb, std::istream& input) {
  SessionOptions so;
  so.engine.mode = opts.mode;
  so.engine.channel = fb.channel.get();
  so.engine.query_limit = opts.query_limit;
  if (fb.serve) {
    auto* ch = fb.serve;
    ch->publish(nlohmann::ordered_json::object(), nlohmann::ordered_json::array());
    so.on_message = [ch](const Session& s, const MessageRecord&, const UpdateResult& u) {
      const bool changed = u.created || u.before != u.after;
      std::optional<nlohmann::ordered_json> groups;
      if (changed) groups = serve::groups_json(s.engine());
      ch->publish(serve::summary_json(s, false), std::move(groups));
    };
  }
  Session session(cfg, std::move(so));
  session.parse(input);
  if (fb.serve) {
    fb.serve->publish(serve::summary_json(session, true), serve::groups_json(session.engine()));
    if (opts.linger > 0) std::this_thread::sleep_for(std::chrono::duration<double>(opts.linger));
    fb.serve->close();
    fb.server->stop();
  }
  return session;
}

void write_outputs(const Session& session, const RunOptions& opts) {
  const fs::path out(opts.out_dir);
  auto records = build_records(session);
  write_meta(records, session.engine().finalize(), out);
  write_params(records, out);
  write_file_atomic(out / "report.txt", format_run_report(session, opts));
  if (opts.dump_tree) {
    std::ostringstream tree;
    session.engine().tree().dump(tree);
    write_file_atomic(out / "tree.txt", tree.str());
  }
}

void add_parse_options(CLI::App& app, RunOptions& opts, std::string& mode, std::string& limit) {
  app.add_option("--input", opts.input, "log file, '-' for stdin")->capture_default_str();
  app.add_option("--config", opts.config, "source config (falls back to $HUE_CONFIG)");
  app.add_option("--mode", mode, "auto or guided")->check(CLI::IsMember({"auto", "guided"}))->capture_default_str();
  app.add_option("--query-limit", limit, "maximum merge queries, or 'unlimited'")->capture_default_str();
  app.add_option("--feedback", opts.feedback, "tty, script:<path> or serve:<port>");
  app.add_option("--seed", opts.seed, "random seed")->capture_default_str();
  app.add_option("--host", opts.host, "serve bind address")->capture_default_str();
  app.add_option("--linger", opts.linger, "seconds the serve endpoint stays up after parsing")->capture_default_str();
}

void finish_parse_options(RunOptions& opts, const std::string& mode, const std::string& limit) {
  opts.mode = mode == "guided" ? UpdateMode::Guided : UpdateMode::Auto;
  opts.query_limit = parse_query_limit(limit);
}

int cmd_parse(RunOptions opts, std::istream& in, std::ostream& out, std::ostream& err) {
  const SourceConfig cfg = resolve_config(opts.config);
  auto spec = parse_feedback(opts.feedback);
  if (spec.kind == FeedbackSpec::Kind::Oracle) throw ConfigError("feedback", "the oracle is only available to eval");
  auto input = open_input(opts.input, in);
  Feedback fb = make_feedback(opts, spec, in, err, nullptr);
  Session session = run_session(cfg, opts, fb, *input.stream);
  write_outputs(session, opts);
  out << format_run_report(session, opts);
  if (session.engine().channel_failed()) {
    err << "feedback channel failed, finished in auto mode: " << session.engine().channel_error() << '\n';
    return kExitChannel;
  }
  return kExitOk;
}

int cmd_eval_loghub(const std::string& root, const std::string& config_dir, std::vector<std::string> names,
                    std::ostream& out, std::ostream& err) {
  if (names.empty()) names = loghub_datasets();
  out << "dataset,messages,grouping_accuracy,template_f1,seconds\n";
  double ga_sum = 0;
  std::size_t n = 0;
  for (const auto& name : names) {
    if (!loghub_available(root, name)) {
      err << name << ": not found under " << root << '\n';
      continue;
    }
    const SourceConfig cfg = load_config(fs::path(config_dir) / (name + ".conf"));
    auto data = load_loghub(root, name);
    std::ifstream in(data.log_path, std::ios::binary);
    const auto t0 = std::chrono::steady_clock::now();
    Session session = parse_stream(in, cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const EvalReport r = evaluate(session, loghub_truth(session, data));
    out << name << ',' << r.messages << ',' << std::fixed << std::setprecision(4) << r.grouping_accuracy << ','
        << r.templates.f1 << ',' << secs << '\n';
    ga_sum += r.grouping_accuracy;
    ++n;
  }
  if (n == 0) {
    err << "no Loghub dataset found\n";
    return kExitIo;
  }
  out << "average," << n << ',' << std::fixed << std::setprecision(4) << ga_sum / static_cast<double>(n) << ",,\n";
  return kExitOk;
}

int cmd_eval(RunOptions opts, const std::string& truth_path, std::istream& in, std::ostream& out, std::ostream& err) {
  const SourceConfig cfg = resolve_config(opts.config);
  const GroundTruth truth = load_ground_truth(truth_path);
  auto spec = parse_feedback(opts.feedback);
  auto input = open_input(opts.input, in);
  Feedback fb = make_feedback(opts, spec, in, err, &truth);
  Session session = run_session(cfg, opts, fb, *input.stream);
  const EvalReport report = evaluate(session, truth);
  const std::string text = format_report(report);
  out << text;
  if (!opts.out_dir.empty()) {
    write_outputs(session, opts);
    write_file_atomic(fs::path(opts.out_dir) / "eval_report.txt", text);
  }
  return session.engine().channel_failed() ? kExitChannel : kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid log parser: templates for event, table and text logs"};
  app.name("hybridlog");
  app.require_subcommand(1);

  RunOptions opts;
  std::string mode = "auto";
  std::string limit = "unlimited";

  auto* parse = app.add_subcommand("parse", "parse a log and write meta, templates and parameters");
  add_parse_options(*parse, opts, mode, limit);
  parse->add_option("--out", opts.out_dir, "output directory")->required();
  parse->add_flag("--dump-tree", opts.dump_tree, "also write tree.txt");

  std::string truth_path, loghub_root, config_dir = "configs/loghub";
  std::vector<std::string> datasets;
  auto* eval = app.add_subcommand("eval", "score a parse against ground truth");
  add_parse_options(*eval, opts, mode, limit);
  eval->add_option("--truth", truth_path, "sidecar csv message_id,gt_group,gt_type,gt_template");
  eval->add_option("--out", opts.out_dir, "also write parse outputs and eval_report.txt here");
  eval->add_flag("--dump-tree", opts.dump_tree, "also write tree.txt");
  eval->add_option("--loghub", loghub_root, "Loghub root with <name>/<name>_2k.log files");
  eval->add_option("--config-dir", config_dir, "per-dataset configs for --loghub")->capture_default_str();
  eval->add_option("--dataset", datasets, "Loghub dataset names (default: all 16)");

  std::vector<std::size_t> g_depth, g_min, g_max;
  std::vector<double> g_eps_a, g_eps_m;
  std::string objective = "ga";
  std::size_t sample_size = 100;
  auto* tune = app.add_subcommand("tune", "grid search over a ground-truth sample");
  tune->add_option("--input", opts.input, "log file")->required();
  tune->add_option("--truth", truth_path, "ground truth csv")->required();
  tune->add_option("--config", opts.config, "base config (falls back to $HUE_CONFIG)");
  tune->add_option("--depth", g_depth, "max_tree_depth values")->delimiter(',');
  tune->add_option("--min-len", g_min, "min_id_len values")->delimiter(',');
  tune->add_option("--max-len", g_max, "max_id_len values")->delimiter(',');
  tune->add_option("--eps-a", g_eps_a, "eps_a values")->delimiter(',');
  tune->add_option("--eps-m", g_eps_m, "eps_m values")->delimiter(',');
  tune->add_option("--objective", objective, "ga or f1")->check(CLI::IsMember({"ga", "f1"}))->capture_default_str();
  tune->add_option("--sample", sample_size, "messages sampled")->capture_default_str();
  tune->add_option("--seed", opts.seed, "sampling seed")->capture_default_str();
  tune->add_option("--out", opts.out_dir, "write the tuned config to this file");

  std::vector<std::size_t> sizes{10000, 100000};
  std::size_t runs = 5;
  auto* bench = app.add_subcommand("bench", "scaling benchmark on synthetic corpora");
  bench->add_option("--sizes", sizes, "corpus sizes in messages")->delimiter(',');
  bench->add_option("--runs", runs, "runs per size")->capture_default_str();
  bench->add_option("--seed", opts.seed, "corpus seed")->capture_default_str();
  bench->add_option("--out", opts.out_dir, "csv file (default stdout)");

  SyntheticSpec gen_spec;
  bool hibench = false;
  auto* gen = app.add_subcommand("gen", "generate a synthetic hybrid corpus with ground truth");
  gen->add_flag("--hibench", hibench, "1879/2057/64 messages over 92/7/18 templates");
  gen->add_option("--events", gen_spec.event_messages);
  gen->add_option("--tables", gen_spec.table_messages);
  gen->add_option("--texts", gen_spec.text_messages);
  gen->add_option("--event-templates", gen_spec.event_templates);
  gen->add_option("--table-templates", gen_spec.table_templates);
  gen->add_option("--text-templates", gen_spec.text_templates);
  gen->add_option("--pairs", gen_spec.ambiguous_pairs, "look-alike event template pairs");
  gen->add_option("--min-rows", gen_spec.min_table_rows)->capture_default_str();
  gen->add_option("--max-rows", gen_spec.max_table_rows)->capture_default_str();
  gen->add_option("--template-seed", gen_spec.template_seed)->capture_default_str();
  gen->add_option("--seed", opts.seed, "instance seed")->capture_default_str();
  gen->add_option("--out", opts.out_dir, "directory for corpus.log, truth.csv, corpus.conf")->required();

  std::vector<const char*> argv{"hybridlog"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (parse->parsed()) {
      opts.subcommand = "parse";
      finish_parse_options(opts, mode, limit);
      return cmd_parse(opts, in, out, err);
    }
    if (eval->parsed()) {
      opts.subcommand = "eval";
      finish_parse_options(opts, mode, limit);
      if (!loghub_root.empty()) return cmd_eval_loghub(loghub_root, config_dir, datasets, out, err);
      if (truth_path.empty()) throw ConfigError("truth", "eval needs --truth or --loghub");
      return cmd_eval(opts, truth_path, in, out, err);
    }
    if (tune->parsed()) {
      const SourceConfig base = resolve_config(opts.config);
      ConfigSpace space = ConfigSpace::from_base(base);
      if (!g_depth.empty()) space.max_tree_depth = g_depth;
      if (!g_min.empty()) space.min_id_len = g_min;
      if (!g_max.empty()) space.max_id_len = g_max;
      if (!g_eps_a.empty()) space.eps_a = g_eps_a;
      if (!g_eps_m.empty()) space.eps_m = g_eps_m;
      std::vector<RawMessage> messages;
      {
        auto input = open_input(opts.input, in);
        segment(*input.stream, base, [&](RawMessage&& m) { messages.push_back(std::move(m)); });
      }
      const GroundTruth truth = load_ground_truth(truth_path);
      const TuningSample sample = sample_messages(std::move(messages), truth, sample_size, opts.seed);
      const GridResult result = grid_search(base, space, sample,
                                            objective == "ga" ? Objective::GroupingAccuracy : Objective::TemplateF1);
      std::ostringstream doc;
      doc << "# grid search: " << result.evaluated.size() << " points, " << sample.messages.size()
          << " sampled messages, best " << objective << " " << result.best.score << '\n'
          << format_config(result.best.config);
      if (opts.out_dir.empty())
        out << doc.str();
      else
        write_file_atomic(opts.out_dir, doc.str());
      return kExitOk;
    }
    if (bench->parsed()) {
      const auto rows = scaling_benchmark(sizes, runs, opts.seed);
      const std::string csv_text = bench_csv(rows);
      if (opts.out_dir.empty())
        out << csv_text;
      else
        write_file_atomic(opts.out_dir, csv_text);
      if (rows.size() >= 2 && rows.front().mean > 0)
        err << "ratio " << rows.back().size << '/' << rows.front().size << ": " << rows.back().mean / rows.front().mean
            << '\n';
      return kExitOk;
    }
    if (gen->parsed()) {
      SyntheticSpec spec = gen_spec;
      if (hibench) {
        SyntheticSpec h = SyntheticSpec::hibench();
        spec.event_messages = h.event_messages;
        spec.table_messages = h.table_messages;
        spec.text_messages = h.text_messages;
        spec.event_templates = h.event_templates;
        spec.table_templates = h.table_templates;
        spec.text_templates = h.text_templates;
      }
      spec.rng_seed = opts.seed;
      const SyntheticCorpus corpus = generate_synthetic(spec);
      const fs::path dir(opts.out_dir);
      write_file_atomic(dir / "corpus.log", corpus.log);
      write_file_atomic(dir / "truth.csv", format_ground_truth(corpus.truth));
      write_file_atomic(dir / "corpus.conf", format_config(synthetic_config()));
      out << "messages: " << corpus.truth.size() << "\nlines: " << corpus.lines << '\n';
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const EvaluationError& e) {
    err << "evaluation error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace hybridlog::cli
