#include "hnnwp/cli.hpp"

#include <fstream>  // for ifstream
#include <ostream>  // for ostream
#include <random>   // for mt19937_64

#include <CLI11.hpp>

#include "hnnwp/error.hpp"
#include "hnnwp/instance.hpp"
#include "hnnwp/oracle.hpp"

namespace hnnwp {

  namespace {
    uint64_t splitmix64(uint64_t x) {
      x += 0x9e3779b97f4a7c15ULL;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      return x ^ (x >> 31);
    }

    HnnWordText query_word(std::string const& text, int rank) {
      return parse_hnn_word(text == "1" ? std::string_view{} : std::string_view{text}, rank);
    }

    std::string join_words(std::vector<word_type> const& ws) {
      std::string s;
      for (size_t i = 0; i < ws.size(); ++i) {
        s += (i == 0 ? "" : ",") + (ws[i].empty() ? std::string("1") : format_word(ws[i]));
      }
      return s;
    }

    std::string bool_text(bool b) {
      return b ? "true" : "false";
    }

    struct Common {
      uint64_t seed          = 1;
      bool     deterministic = false;

      SlpOptions slp() const {
        SlpOptions o;
        o.equality = deterministic ? equality_mode::recompression : equality_mode::fingerprint;
        o.seed     = splitmix64(seed);
        return o;
      }
    };

    int cmd_solve(Common const&                   c,
                  std::string const&              path,
                  std::vector<std::string> const& words,
                  std::string const&              words_file,
                  bool                            no_time,
                  std::ostream&                   out) {
      InstanceFile file = load_instance(path);
      Solver       solver(file, c.slp());
      std::vector<std::string> all = words;
      if (!words_file.empty()) {
        std::ifstream in(words_file);
        if (!in) {
          fail(error_kind::parse, "cannot open " + words_file);
        }
        for (std::string line; std::getline(in, line);) {
          if (!line.empty() && line.back() == '\r') {
            line.pop_back();
          }
          if (!line.empty()) {
            all.push_back(line);
          }
        }
      }
      std::vector<HnnWordText> parsed;
      for (auto const& w : all) {
        parsed.push_back(query_word(w, file.rank));
      }
      for (size_t i = 0; i < parsed.size(); ++i) {
        SolveResult r = solver.solve(parsed[i]);
        if (parsed.size() > 1) {
          out << all[i] << " ";
        }
        out << "trivial: " << bool_text(r.trivial) << "\n";
        out << "stats: " << r.stats.serialize(!no_time) << "\n";
      }
      return exit_ok;
    }

    int cmd_reduce(Common const& c, std::string const& path, std::string const& word, std::ostream& out) {
      InstanceFile file = load_instance(path);
      Solver       solver(file, c.slp());
      SolveResult  r = solver.solve(query_word(word, file.rank));
      if (r.stats.stable_remaining != 0) {
        out << "t-reduced: stable letters remain, trivial: false\n";
        return exit_ok;
      }
      out << "reduced_size=" << r.stats.reduced_size
          << " reduced_length=" << to_string(r.stats.reduced_length) << "\n";
      if (r.stats.reduced_length <= 1024) {
        auto lab = decompress(label_slp(r.reduced, solver.work_graph()), 1024);
        out << "word: " << (lab.empty() ? std::string("1") : format_word(lab)) << "\n";
      }
      out << "trivial: " << bool_text(r.trivial) << "\n";
      return exit_ok;
    }

    int cmd_analyze(Common const& c, std::string const& path, std::ostream& out) {
      InstanceFile  file = load_instance(path);
      SubgroupGraph g    = fold_from_generators(file.gens, file.rank);
      SpanningTree  t    = spanning_tree(g);
      auto          idx  = regular_index(g);
      out << "index=" << (idx ? std::to_string(*idx) : std::string("infinite"))
          << " normal=" << bool_text(idx && is_normal(g)) << " basis=" << join_words(t.basis) << "\n";
      out << "graph:\n" << g.serialize();
      Solver solver(file, c.slp());
      if (solver.is_normal_engine()) {
        out << "engine=normal C=" << solver.constant() << "\n";
      } else {
        auto const& gi = solver.general();
        out << "engine=general index_N=" << gi.index() << " marked_cosets=" << gi.marked_count()
            << " C*=" << solver.constant() << "\n";
      }
      return exit_ok;
    }

    int cmd_normalizable(Common const& c, std::string const& path, std::optional<size_t> steps, std::ostream& out) {
      InstanceFile file = load_instance(path);
      SubgroupGraph g   = fold_from_generators(file.gens, file.rank);
      SpanningTree  t   = spanning_tree(g);
      auto images = file.phi_keys.empty() ? t.basis : images_on_basis(g, t, file.phi_keys, file.phi_values);
      std::optional<std::vector<word_type>> inv;
      if (!file.inv_keys.empty()) {
        inv = images_on_basis(g, t, file.inv_keys, file.inv_values);
      }
      BasisMap phi = make_basis_map(file.rank, t.basis, images, inv, c.slp());
      if (!regular_index(phi.graph)) {
        fail(error_kind::invalid_instance, "the subgroup has infinite index");
      }
      StabilizationReport rep = find_m_phi(phi, steps.value_or(file.max_steps));
      out << rep.serialize();
      if (!rep.stabilized) {
        out << "not shown normalizable within budget\n";
        return exit_invalid_instance;
      }
      return exit_ok;
    }

    int cmd_oracle_check(Common const& c,
                         std::string const& path,
                         size_t             count,
                         size_t             max_len,
                         size_t             max_stable,
                         std::ostream&      out) {
      InstanceFile    file = load_instance(path);
      Solver          solver(file, c.slp());
      std::mt19937_64 rng(c.seed);
      size_t          agree = 0, mismatch = 0, skipped = 0;
      for (size_t i = 0; i < count; ++i) {
        word_type     x   = random_hnn_word(rng, file.rank, max_len, max_stable);
        HnnWordText   hw  = split_syllables(x);
        oracle_answer ora = naive_solve(solver.phi(), hw);
        if (ora == oracle_answer::budget_exceeded) {
          ++skipped;
          continue;
        }
        bool engine = solver.solve(hw).trivial;
        if (engine == (ora == oracle_answer::trivial)) {
          ++agree;
        } else {
          ++mismatch;
          out << "mismatch: " << (x.empty() ? std::string("1") : format_word(x))
              << " engine=" << bool_text(engine) << " oracle=" << bool_text(!engine) << "\n";
        }
      }
      out << "engine=" << (solver.is_normal_engine() ? "normal" : "general") << " seed=" << c.seed
          << " checked=" << count << " agree=" << agree << " mismatch=" << mismatch
          << " budget_exceeded=" << skipped << "\n";
      return mismatch == 0 ? exit_ok : exit_oracle_mismatch;
    }

    int cmd_bench(Common const&              c,
                  std::string const&         path,
                  std::string const&         family,
                  std::vector<size_t> const& ns,
                  std::string const&         base,
                  std::ostream&              out) {
      if (family != "conjugate-power") {
        fail(error_kind::parse, "unknown family " + family);
      }
      InstanceFile file = load_instance(path);
      Solver       solver(file, c.slp());
      word_type    x = base.empty() ? solver.phi().basis().front() : parse_word(base, file.rank);
      out << "n k final_size reduced_size reduced_length seconds\n";
      for (size_t n : ns) {
        HnnWordText hw;
        hw.syllables.assign(2 * n + 1, word_type{});
        hw.syllables[n] = x;
        hw.signs.assign(n, -1);
        hw.signs.resize(2 * n, 1);
        SolveResult r = solver.solve(hw);
        char        buf[32];
        std::snprintf(buf, sizeof(buf), "%.6f", r.stats.seconds);
        out << n << " " << hw.stable_count() << " " << r.stats.final_size << " "
            << r.stats.reduced_size << " " << to_string(r.stats.reduced_length) << " " << buf << "\n";
      }
      return exit_ok;
    }
  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Word problem in HNN extensions of free groups with finite-index associated subgroups",
                 "hnnwp"};
    app.require_subcommand(1);
    Common c;
    app.add_option("--seed", c.seed, "Seed for random words and fingerprints")->capture_default_str();
    app.add_flag("--deterministic", c.deterministic,
                 "Compare compressed words by recompression instead of fingerprints");

    std::string path;
    auto*       solve = app.add_subcommand("solve", "Decide whether words are trivial");
    std::vector<std::string> words;
    std::string              words_file;
    bool                     no_time = false;
    solve->add_option("instance", path, "Instance file (.hnn)")->required();
    solve->add_option("-w,--word", words, "Word over the generators and t/T");
    solve->add_option("--words-file", words_file, "File with one word per line");
    solve->add_flag("--no-time", no_time, "Omit wall times from the stats");

    auto*       reduce = app.add_subcommand("reduce", "Print the reduced form of a word");
    std::string word;
    reduce->add_option("instance", path)->required();
    reduce->add_option("-w,--word", word)->required();

    auto* analyze = app.add_subcommand("analyze", "Print the subgroup graph and instance data");
    analyze->add_option("instance", path)->required();

    auto*                 normalizable = app.add_subcommand("normalizable", "Run the phi-stable chain");
    std::optional<size_t> max_steps;
    normalizable->add_option("instance", path)->required();
    normalizable->add_option("--max-steps", max_steps);

    auto*  oracle = app.add_subcommand("oracle-check", "Compare the engine with the naive reduction");
    size_t count = 1000, max_len = 12, max_stable = 4;
    oracle->add_option("instance", path)->required();
    oracle->add_option("--random", count)->capture_default_str();
    oracle->add_option("--maxlen", max_len)->capture_default_str();
    oracle->add_option("--max-stable", max_stable)->capture_default_str();
    oracle->add_option("--seed", c.seed);

    auto*               bench = app.add_subcommand("bench", "Time a family of words");
    std::string         family = "conjugate-power";
    std::vector<size_t> ns;
    std::string         base;
    bench->add_option("instance", path)->required();
    bench->add_option("--family", family)->capture_default_str();
    bench->add_option("--n", ns)->required();
    bench->add_option("--base", base, "Conjugated word (default: first basis element)");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(std::move(rev));
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return exit_ok;
    } catch (CLI::CallForAllHelp const&) {
      out << app.help("", CLI::AppFormatMode::All);
      return exit_ok;
    } catch (CLI::ParseError const& e) {
      err << "error: " << e.what() << "\n";
      return exit_parse_error;
    }

    try {
      if (*solve) {
        return cmd_solve(c, path, words, words_file, no_time, out);
      }
      if (*reduce) {
        return cmd_reduce(c, path, word, out);
      }
      if (*analyze) {
        return cmd_analyze(c, path, out);
      }
      if (*normalizable) {
        return cmd_normalizable(c, path, max_steps, out);
      }
      if (*oracle) {
        return cmd_oracle_check(c, path, count, max_len, max_stable, out);
      }
      return cmd_bench(c, path, family, ns, base, out);
    } catch (Error const& e) {
      err << "error: " << e.what() << "\n";
      return e.kind() == error_kind::parse ? exit_parse_error : exit_invalid_instance;
    }
  }

}  // namespace hnnwp
