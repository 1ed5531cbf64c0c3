#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "braidrack/braid.hpp"
#include "braidrack/color.hpp"
#include "braidrack/errors.hpp"
#include "braidrack/free_rack.hpp"
#include "braidrack/pointed.hpp"
#include "braidrack/rack.hpp"

namespace braidrack::cli {

// Exit code contract: 0 success, 1 invariant distinguished / validation
// failed, 2 input error, 3 resource cap exceeded.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDistinguished = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitResourceCap = 3;

struct RunConfig {
    std::string subcommand;
    std::string rack_source;
    std::vector<std::string> rack_sources;  // compare
    int strands = 0;                        // 0 = read from the word's n= header
    std::string word_text;
    std::string word_a, word_b;             // compare
    std::string format;                     // perm | dense | coo | json-summary
    std::uint64_t cap = 0;                  // 0 = env/default
    int workers = 1;
    bool legend = false;
    bool trace_only = false;
    std::string top_text, bottom_text;
    std::string label_prefix = "x";
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

namespace detail_cli {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (true) {
        const size_t next = s.find(sep, pos);
        out.push_back(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
        if (next == std::string::npos)
            break;
        pos = next + 1;
    }
    return out;
}

inline int parse_int_param(const std::string& value, const std::string& what) {
    try {
        size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw InvalidParameters("bad " + what + ": '" + value + "'");
    }
}

inline std::vector<std::vector<int>> parse_table_rows(std::string_view text) {
    const auto lines = braidrack::detail::significant_lines(text);
    if (lines.empty())
        throw ParseError("empty input", 1, 1);
    const auto header = braidrack::detail::parse_int_row(lines[0].second, lines[0].first);
    if (header.size() != 1 || header[0] < 1)
        throw ParseError("expected a single positive integer (the order)", lines[0].first, 1);
    const int m = header[0];
    if (static_cast<int>(lines.size()) != m + 1)
        throw ParseError("expected " + std::to_string(m) + " rows", lines.back().first, 1);
    std::vector<std::vector<int>> rows;
    for (int r = 1; r <= m; ++r)
        rows.push_back(braidrack::detail::parse_int_row(lines[r].second, lines[r].first));
    return rows;
}

}  // namespace detail_cli

/// Builds a rack from a builtin spec ("dihedral:3", "ts:5:2:4", "trivial:2",
/// "core:<group-file>") or from a table file path.
inline FiniteRack load_rack(const std::string& source) {
    if (source.rfind("dihedral:", 0) == 0)
        return dihedral_quandle(detail_cli::parse_int_param(source.substr(9), "dihedral order"));
    if (source.rfind("trivial:", 0) == 0)
        return trivial_quandle(detail_cli::parse_int_param(source.substr(8), "trivial order"));
    if (source.rfind("ts:", 0) == 0) {
        const auto parts = detail_cli::split(source.substr(3), ':');
        if (parts.size() != 3)
            throw InvalidParameters("ts rack spec needs ts:<m>:<t>:<s>, got '" + source + "'");
        return ts_rack(detail_cli::parse_int_param(parts[0], "ts modulus"),
                       detail_cli::parse_int_param(parts[1], "ts parameter t"),
                       detail_cli::parse_int_param(parts[2], "ts parameter s"));
    }
    if (source.rfind("core:", 0) == 0)
        return core_quandle(detail_cli::parse_table_rows(read_file(source.substr(5))));
    return parse_rack_file(read_file(source));
}

inline std::uint64_t resolve_cap(std::uint64_t flag_cap, std::uint64_t fallback) {
    if (flag_cap > 0)
        return flag_cap;
    if (const char* env = std::getenv("BRAIDRACK_CAP")) {
        try {
            size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used != std::string(env).size() || v == 0)
                throw std::invalid_argument(env);
            return static_cast<std::uint64_t>(v);
        } catch (const std::exception&) {
            throw InvalidParameters(std::string("bad BRAIDRACK_CAP value: '") + env + "'");
        }
    }
    return fallback;
}

namespace detail_cli {

inline BraidWord parse_word(const std::string& text, int strands_flag) {
    int strands = strands_flag;
    if (strands == 0) {
        const auto header = parse_braid_header(text);
        if (!header)
            throw InvalidParameters("strand count required: pass --strands or an n= header");
        strands = *header;
    }
    return parse_braid(text, strands);
}

inline std::vector<int> parse_color_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok)
        out.push_back(parse_int_param(tok, "color"));
    return out;
}

inline nlohmann::json word_json(const BraidWord& w) {
    return nlohmann::json{{"strands", w.strands()}, {"letters", w.letters()}};
}

inline int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    const bool json = cfg.format == "json-summary";
    try {
        const FiniteRack rack = load_rack(cfg.rack_source);
        if (json) {
            out << nlohmann::json{{"subcommand", "validate"},
                                  {"order", rack.order()},
                                  {"quandle", rack.is_quandle()},
                                  {"pass", true}}
                       .dump()
                << '\n';
        } else {
            out << "order " << rack.order() << ", "
                << (rack.is_quandle() ? "quandle" : "rack") << ", PASS\n";
        }
        return kExitOk;
    } catch (const AxiomOneViolation& e) {
        if (json)
            out << nlohmann::json{{"subcommand", "validate"}, {"pass", false},
                                  {"error", e.what()}}
                       .dump()
                << '\n';
        else
            out << e.what() << "\nFAIL\n";
        return kExitDistinguished;
    } catch (const AxiomTwoViolation& e) {
        if (json)
            out << nlohmann::json{{"subcommand", "validate"}, {"pass", false},
                                  {"error", e.what()}}
                       .dump()
                << '\n';
        else
            out << e.what() << "\nFAIL\n";
        return kExitDistinguished;
    }
}

inline int cmd_matrix(const RunConfig& cfg, std::ostream& out) {
    const FiniteRack rack = load_rack(cfg.rack_source);
    const BraidWord word = parse_word(cfg.word_text, cfg.strands);
    const std::uint64_t cap = resolve_cap(cfg.cap, kDefaultMatrixCap);
    const CountingMatrix mat = counting_matrix(rack, word, cap, cfg.workers);
    const std::uint64_t tr = trace(mat);
    if (cfg.format == "json-summary") {
        out << nlohmann::json{{"subcommand", "matrix"},
                              {"rack", cfg.rack_source},
                              {"order", rack.order()},
                              {"word", word_json(word)},
                              {"size", mat.size()},
                              {"trace", tr},
                              {"perm", mat.perm()}}
                   .dump()
            << '\n';
        return kExitOk;
    }
    if (cfg.legend)
        out << matrix_legend(mat);
    if (cfg.format == "dense")
        out << matrix_to_dense_string(mat);
    else if (cfg.format == "coo")
        out << matrix_to_coo_string(mat);
    else
        out << matrix_to_perm_string(mat);
    out << "trace=" << tr << " size=" << mat.size() << '\n';
    return kExitOk;
}

inline int cmd_trace(const RunConfig& cfg, std::ostream& out) {
    const FiniteRack rack = load_rack(cfg.rack_source);
    const BraidWord word = parse_word(cfg.word_text, cfg.strands);
    const std::uint64_t cap = resolve_cap(cfg.cap, kDefaultStreamCap);
    const std::uint64_t colorings = closure_colorings(rack, word, cap, cfg.workers);
    if (cfg.format == "json-summary") {
        out << nlohmann::json{{"subcommand", "trace"},
                              {"rack", cfg.rack_source},
                              {"order", rack.order()},
                              {"word", word_json(word)},
                              {"colorings", colorings}}
                   .dump()
            << '\n';
    } else {
        out << colorings << '\n';
    }
    return kExitOk;
}

inline int cmd_closure(const RunConfig& cfg, std::ostream& out) {
    const FiniteRack rack = load_rack(cfg.rack_source);
    const BraidWord word = parse_word(cfg.word_text, cfg.strands);
    const std::uint64_t cap = resolve_cap(cfg.cap, kDefaultStreamCap);
    const std::uint64_t colorings = closure_colorings(rack, word, cap, cfg.workers);
    const int components = closure_components(word);
    if (cfg.format == "json-summary") {
        out << nlohmann::json{{"subcommand", "closure"},
                              {"rack", cfg.rack_source},
                              {"word", word_json(word)},
                              {"components", components},
                              {"colorings", colorings}}
                   .dump()
            << '\n';
    } else {
        out << "components=" << components << " colorings=" << colorings << '\n';
    }
    return kExitOk;
}

inline int cmd_pointed(const RunConfig& cfg, std::ostream& out) {
    const FiniteRack rack = load_rack(cfg.rack_source);
    const BraidWord word = parse_word(cfg.word_text, cfg.strands);
    std::vector<int> basepoints = parse_color_list(cfg.top_text);
    const std::vector<int> bottom = parse_color_list(cfg.bottom_text);
    basepoints.insert(basepoints.end(), bottom.begin(), bottom.end());
    const PointedRack px(rack, basepoints);
    const int value = pointed_counting_invariant(px, word);
    if (cfg.format == "json-summary")
        out << nlohmann::json{{"subcommand", "pointed"},
                              {"rack", cfg.rack_source},
                              {"word", word_json(word)},
                              {"value", value}}
                   .dump()
            << '\n';
    else
        out << value << '\n';
    return kExitOk;
}

inline int cmd_fundamental(const RunConfig& cfg, std::ostream& out) {
    const BraidWord word = parse_word(cfg.word_text, cfg.strands);
    const FundamentalPointedRack fpr = fundamental_pointed_rack(word);
    if (cfg.format == "json-summary") {
        std::vector<std::string> top, bottom;
        for (const auto& el : fpr.top)
            top.push_back(to_string(el, cfg.label_prefix));
        for (const auto& el : fpr.bottom)
            bottom.push_back(to_string(el, cfg.label_prefix));
        out << nlohmann::json{{"subcommand", "fundamental"},
                              {"word", word_json(word)},
                              {"top", top},
                              {"bottom", bottom}}
                   .dump()
            << '\n';
        return kExitOk;
    }
    for (int i = 0; i < fpr.strands; ++i)
        out << 't' << (i + 1) << " = " << to_string(fpr.top[i], cfg.label_prefix) << '\n';
    for (int i = 0; i < fpr.strands; ++i)
        out << 'b' << (i + 1) << " = " << to_string(fpr.bottom[i], cfg.label_prefix) << '\n';
    return kExitOk;
}

inline int cmd_compare(const RunConfig& cfg, std::ostream& out) {
    if (cfg.rack_sources.empty())
        throw InvalidParameters("compare needs at least one rack in --racks");
    const BraidWord a = parse_word(cfg.word_a, cfg.strands);
    const BraidWord b = parse_word(cfg.word_b, cfg.strands);
    if (a.strands() != b.strands())
        throw StrandMismatch("words have different strand counts");
    std::string distinguished;
    for (const auto& source : cfg.rack_sources) {
        const FiniteRack rack = load_rack(source);
        bool differ;
        if (cfg.trace_only) {
            const std::uint64_t cap = resolve_cap(cfg.cap, kDefaultStreamCap);
            differ = closure_colorings(rack, a, cap, cfg.workers) !=
                     closure_colorings(rack, b, cap, cfg.workers);
        } else {
            const std::uint64_t cap = resolve_cap(cfg.cap, kDefaultMatrixCap);
            differ = !(counting_matrix(rack, a, cap, cfg.workers) ==
                       counting_matrix(rack, b, cap, cfg.workers));
        }
        if (differ) {
            distinguished = source;
            break;
        }
    }
    if (cfg.format == "json-summary") {
        nlohmann::json j{{"subcommand", "compare"},
                         {"a", word_json(a)},
                         {"b", word_json(b)},
                         {"distinguished", !distinguished.empty()}};
        j["distinguished_by"] =
            distinguished.empty() ? nlohmann::json() : nlohmann::json(distinguished);
        out << j.dump() << '\n';
    } else if (!distinguished.empty()) {
        out << "distinguished by " << distinguished << '\n';
    } else {
        out << "indistinguishable over given racks\n";
    }
    return distinguished.empty() ? kExitOk : kExitDistinguished;
}

}  // namespace detail_cli

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"finite racks, braid words, and braid coloring invariants", "braidrack"};
    app.require_subcommand(1);

    const auto add_rack = [&](CLI::App* cmd) {
        cmd->add_option("--rack", cfg.rack_source,
                        "rack source: dihedral:<n>, ts:<m>:<t>:<s>, trivial:<n>, "
                        "core:<group-file>, or a table file path")
            ->required();
    };
    const auto add_word = [&](CLI::App* cmd) {
        cmd->add_option("--word", cfg.word_text, "braid word letters")->required();
        cmd->add_option("--strands", cfg.strands, "strand count (or use an n= header)")
            ->check(CLI::PositiveNumber);
    };
    const auto add_perf = [&](CLI::App* cmd) {
        cmd->add_option("--cap", cfg.cap, "override the m^n size cap");
        cmd->add_option("--workers", cfg.workers, "parallel workers")
            ->check(CLI::PositiveNumber);
    };
    const auto add_format = [&](CLI::App* cmd, const std::vector<std::string>& choices) {
        std::string help = "output format:";
        for (const auto& c : choices)
            help += ' ' + c;
        cmd->add_option("--format", cfg.format, help)->check(CLI::IsMember(choices));
    };

    CLI::App* validate = app.add_subcommand("validate", "check the rack axioms of a table");
    add_rack(validate);
    add_format(validate, {"json-summary"});

    CLI::App* matrix = app.add_subcommand("matrix", "emit the counting matrix of a word");
    add_rack(matrix);
    add_word(matrix);
    add_perf(matrix);
    add_format(matrix, {"perm", "dense", "coo", "json-summary"});
    matrix->add_flag("--legend", cfg.legend, "emit '# i = (c1,...,cn)' index legend lines");

    CLI::App* trace_cmd = app.add_subcommand("trace", "closure coloring count of a word");
    add_rack(trace_cmd);
    add_word(trace_cmd);
    add_perf(trace_cmd);
    add_format(trace_cmd, {"json-summary"});

    CLI::App* closure = app.add_subcommand("closure", "closure components and coloring count");
    add_rack(closure);
    add_word(closure);
    add_perf(closure);
    add_format(closure, {"json-summary"});

    CLI::App* pointed = app.add_subcommand("pointed", "pointed rack counting invariant (0/1)");
    add_rack(pointed);
    add_word(pointed);
    pointed->add_option("--top", cfg.top_text, "top basepoints, space separated")->required();
    pointed->add_option("--bottom", cfg.bottom_text, "bottom basepoints, space separated")
        ->required();
    add_format(pointed, {"json-summary"});

    CLI::App* fundamental =
        app.add_subcommand("fundamental", "symbolic top/bottom labels of a word");
    add_word(fundamental);
    fundamental->add_option("--label-style", cfg.label_prefix, "generator prefix (x or t)");
    add_format(fundamental, {"json-summary"});

    CLI::App* compare = app.add_subcommand("compare", "compare two words over a rack list");
    compare
        ->add_option("--racks", cfg.rack_sources, "comma-separated rack sources")
        ->required()
        ->delimiter(',');
    compare->add_option("--strands", cfg.strands, "strand count")->check(CLI::PositiveNumber);
    compare->add_option("--a", cfg.word_a, "first braid word")->required();
    compare->add_option("--b", cfg.word_b, "second braid word")->required();
    compare->add_flag("--trace-only", cfg.trace_only, "compare traces instead of matrices");
    add_perf(compare);
    add_format(compare, {"json-summary"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitInputError;
    }

    try {
        if (app.got_subcommand(validate))
            return detail_cli::cmd_validate(cfg, out);
        if (app.got_subcommand(matrix))
            return detail_cli::cmd_matrix(cfg, out);
        if (app.got_subcommand(trace_cmd))
            return detail_cli::cmd_trace(cfg, out);
        if (app.got_subcommand(closure))
            return detail_cli::cmd_closure(cfg, out);
        if (app.got_subcommand(pointed))
            return detail_cli::cmd_pointed(cfg, out);
        if (app.got_subcommand(fundamental))
            return detail_cli::cmd_fundamental(cfg, out);
        if (app.got_subcommand(compare))
            return detail_cli::cmd_compare(cfg, out);
    } catch (const SizeCapExceeded& e) {
        err << e.what() << '\n';
        if (app.got_subcommand(matrix))
            err << "advisory: the trace subcommand streams without materializing the matrix\n";
        return kExitResourceCap;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return kExitInputError;
    }
    err << "no subcommand\n";
    return kExitInputError;
}

/// Convenience overload for tests: args without the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.emplace_back("braidrack");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(full.size());
    for (const auto& s : full)
        argv.push_back(s.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace braidrack::cli
