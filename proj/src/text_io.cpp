#include "parclone/text_io.hpp"

#include <fstream>
#include <sstream>

namespace parclone {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

int parse_int(const std::string& tok, const std::string& what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        require(pos == tok.size(), "trailing characters after " + what + ": " + tok);
        return v;
    } catch (const invalid_input&) {
        throw;
    } catch (const std::exception&) {
        throw invalid_input("cannot parse " + what + ": " + tok);
    }
}

// "k=<v>" style header field
int header_field(const std::string& tok, std::string_view name) {
    require(tok.size() > name.size() + 1 && tok.substr(0, name.size()) == name &&
                tok[name.size()] == '=',
            "expected " + std::string(name) + "=<value>, got " + tok);
    return parse_int(tok.substr(name.size() + 1), std::string(name));
}

std::vector<std::string> non_empty_lines(std::string_view text, bool keep_blank = false) {
    std::vector<std::string> lines;
    std::string cur;
    std::istringstream in{std::string(text)};
    while (std::getline(in, cur)) {
        if (!cur.empty() && cur.back() == '\r') cur.pop_back();
        if (keep_blank || !split_ws(cur).empty()) lines.push_back(cur);
    }
    return lines;
}

}  // namespace

std::string format_pfn(const PartialFn& f) {
    std::ostringstream out;
    out << "pfn k=" << f.k() << " n=" << f.arity() << "\n";
    for (std::uint32_t c = 0; c < f.cells(); ++c) {
        if (!f.defined(c)) continue;
        auto coords = decode_point(f.k(), f.arity(), c);
        for (std::size_t i = 0; i < coords.size(); ++i) out << (i ? " " : "") << int(coords[i]);
        out << " -> " << int(f.table()[c]) << "\n";
    }
    return out.str();
}

PartialFn parse_pfn(std::string_view text) {
    auto lines = non_empty_lines(text);
    require(!lines.empty(), "empty pfn text");
    auto head = split_ws(lines[0]);
    require(head.size() == 3 && head[0] == "pfn", "pfn header must be 'pfn k=<k> n=<n>'");
    const int k = header_field(head[1], "k");
    const int n = header_field(head[2], "n");
    PartialFn f(k, n);
    CellSet dom(f.cells());
    std::vector<Value> table(f.cells(), 0);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        auto toks = split_ws(lines[li]);
        require(static_cast<int>(toks.size()) == n + 2,
                "cell line needs " + std::to_string(n) + " coordinates, '->' and a value: " + lines[li]);
        require(toks[static_cast<std::size_t>(n)] == "->", "missing '->' in cell line: " + lines[li]);
        std::vector<Value> coords;
        for (int i = 0; i < n; ++i) {
            const int c = parse_int(toks[static_cast<std::size_t>(i)], "coordinate");
            require(c >= 0 && c < k, "coordinate out of range in line: " + lines[li]);
            coords.push_back(static_cast<Value>(c));
        }
        const int v = parse_int(toks[static_cast<std::size_t>(n + 1)], "value");
        require(v >= 0 && v < k, "value out of range in line: " + lines[li]);
        const std::uint32_t cell = encode_point(k, coords);
        require(!dom.test(cell), "duplicate cell in pfn text: " + lines[li]);
        dom.set(cell);
        table[cell] = static_cast<Value>(v);
    }
    return PartialFn(k, n, std::move(dom), std::move(table));
}

std::string format_pfn_blocks(std::span<const PartialFn> fns) {
    std::ostringstream out;
    for (std::size_t i = 0; i < fns.size(); ++i) {
        if (i) out << "\n";
        out << format_pfn(fns[i]);
    }
    return out.str();
}

std::vector<PartialFn> parse_pfn_blocks(std::string_view text) {
    std::vector<PartialFn> fns;
    std::string block;
    auto flush = [&] {
        if (!split_ws(block).empty()) fns.push_back(parse_pfn(block));
        block.clear();
    };
    for (const auto& line : non_empty_lines(text, /*keep_blank=*/true)) {
        if (split_ws(line).empty()) {
            flush();
        } else {
            block += line;
            block += "\n";
        }
    }
    flush();
    return fns;
}

std::vector<PartialFn> load_pfn_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pfn_blocks(buf.str());
}

void save_pfn_file(const std::string& path, std::span<const PartialFn> fns) {
    std::ofstream out(path);
    require(out.good(), "cannot write file: " + path);
    out << format_pfn_blocks(fns);
}

std::string format_relation(const Relation& rho) {
    std::ostringstream out;
    out << "rel k=" << rho.k() << " h=" << rho.arity() << "\n";
    for (const auto& t : rho.tuples()) {
        for (std::size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << int(t[i]);
        out << "\n";
    }
    return out.str();
}

Relation parse_relation(std::string_view text) {
    auto lines = non_empty_lines(text);
    require(!lines.empty(), "empty relation text");
    auto head = split_ws(lines[0]);
    require(head.size() == 3 && head[0] == "rel", "relation header must be 'rel k=<k> h=<h>'");
    const int k = header_field(head[1], "k");
    const int h = header_field(head[2], "h");
    std::vector<std::vector<Value>> tuples;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        auto toks = split_ws(lines[li]);
        require(static_cast<int>(toks.size()) == h,
                "tuple line needs " + std::to_string(h) + " entries: " + lines[li]);
        std::vector<Value> t;
        for (const auto& tok : toks) {
            const int c = parse_int(tok, "tuple entry");
            require(c >= 0 && c < k, "tuple entry out of range in line: " + lines[li]);
            t.push_back(static_cast<Value>(c));
        }
        tuples.push_back(std::move(t));
    }
    return Relation(k, h, std::move(tuples));
}

Relation relation_from_spec(const std::string& name_or_path) {
    try {
        return builtins::by_name(name_or_path);
    } catch (const invalid_input&) {
    }
    std::ifstream in(name_or_path);
    require(in.good(), "not a builtin relation name and not a readable file: " + name_or_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_relation(buf.str());
}

}  // namespace parclone
