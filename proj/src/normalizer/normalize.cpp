#include <algorithm>
#include <sstream>

#include "floc/frontend.hpp"
#include "floc/normalizer.hpp"

namespace floc::normalizer {

namespace {

class Lowering {
 public:
  explicit Lowering(int first_temp) : next_(first_temp) {}

  std::vector<Stmt> block(const std::vector<Stmt>& in) {
    std::vector<Stmt> out;
    for (const auto& s : in) stmt(s, out);
    return out;
  }

 private:
  void stmt(const Stmt& s, std::vector<Stmt>& out) {
    switch (s.kind) {
      case StmtKind::VarDecl:
      case StmtKind::Assign: {
        Stmt copy = s;
        if (s.expr) copy.expr = top(*s.expr, /*allow_call=*/true, out);
        out.push_back(std::move(copy));
        return;
      }
      case StmtKind::Return: {
        Stmt copy = s;
        if (s.expr) copy.expr = top(*s.expr, false, out);
        out.push_back(std::move(copy));
        return;
      }
      case StmtKind::If: {
        Stmt copy = s;
        copy.expr = top(*s.expr, false, out);
        copy.body = block(s.body);
        copy.else_body = block(s.else_body);
        out.push_back(std::move(copy));
        return;
      }
      case StmtKind::While: {
        Stmt copy = s;
        copy.body = block(s.body);
        out.push_back(std::move(copy));
        return;
      }
      case StmtKind::Block: {
        Stmt copy = s;
        copy.body = block(s.body);
        out.push_back(std::move(copy));
        return;
      }
    }
  }

  // Flat version of `e`: operands become atoms, hoisting as needed.
  Expr top(const Expr& e, bool allow_call, std::vector<Stmt>& out) {
    if (e.is_atom() || e.kind == ExprKind::Result || e.kind == ExprKind::Old) return e;
    if (e.kind == ExprKind::Call && !allow_call) return atom(e, out);
    Expr flat = e;
    for (auto& op : flat.operands) op = atom(op, out);
    return flat;
  }

  Expr atom(const Expr& e, std::vector<Stmt>& out) {
    if (e.is_atom()) return e;
    Expr rhs = top(e, true, out);
    std::string name = "tmp_" + std::to_string(next_++);
    out.push_back(Stmt::var_decl(name, e.sort, std::move(rhs), e.span));
    return Expr::var(name, e.sort, e.span);
  }

  int next_;
};

int max_temp_index(const std::vector<Stmt>& body) {
  int best = -1;
  for (const auto& s : body) {
    if (s.kind == StmtKind::VarDecl && frontend::is_reserved_temp_name(s.name))
      best = std::max(best, std::stoi(s.name.substr(4)));
    best = std::max(best, max_temp_index(s.body));
    best = std::max(best, max_temp_index(s.else_body));
  }
  return best;
}

bool stmts_normalized(const std::vector<Stmt>& body) {
  for (const auto& s : body) {
    switch (s.kind) {
      case StmtKind::VarDecl:
      case StmtKind::Assign:
        if (s.expr && !is_flat(*s.expr)) return false;
        break;
      case StmtKind::Return:
      case StmtKind::If:
        if (s.expr && (!is_flat(*s.expr) || s.expr->kind == ExprKind::Call)) return false;
        break;
      case StmtKind::While:
      case StmtKind::Block: break;
    }
    if (!stmts_normalized(s.body) || !stmts_normalized(s.else_body)) return false;
  }
  return true;
}

void dump(std::ostream& os, const std::vector<Stmt>& body, int depth) {
  auto margin = [&](int line) {
    os.width(5);
    os << line << " | " << std::string(static_cast<std::size_t>(depth) * 2, ' ');
  };
  auto close = [&] { os << "      | " << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "}\n"; };
  for (const auto& s : body) {
    margin(s.span.start_line);
    switch (s.kind) {
      case StmtKind::VarDecl:
      case StmtKind::Assign:
      case StmtKind::Return: os << frontend::print_stmt_line(s) << '\n'; break;
      case StmtKind::If:
        os << frontend::print_stmt_line(s) << " {\n";
        dump(os, s.body, depth + 1);
        if (s.has_else || !s.else_body.empty()) {
          os << "      | " << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "} else {\n";
          dump(os, s.else_body, depth + 1);
        }
        close();
        break;
      case StmtKind::While:
        os << "/*@ loop invariant " << frontend::print_expr(*s.invariant) << "; @*/ "
           << frontend::print_stmt_line(s) << " {\n";
        dump(os, s.body, depth + 1);
        close();
        break;
      case StmtKind::Block:
        os << "{\n";
        dump(os, s.body, depth + 1);
        close();
        break;
    }
  }
}

}  // namespace

SourceMap::SourceMap(std::string file, std::string_view source) : file_(std::move(file)) {
  std::size_t pos = 0;
  while (pos <= source.size()) {
    std::size_t nl = source.find('\n', pos);
    if (nl == std::string_view::npos) {
      if (pos < source.size()) lines_.emplace_back(source.substr(pos));
      break;
    }
    std::string_view l = source.substr(pos, nl - pos);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    lines_.emplace_back(l);
    pos = nl + 1;
  }
}

const std::string& SourceMap::line(int n) const {
  if (n < 1 || n > line_count()) throw UnknownNode("line " + std::to_string(n) + " is outside " + file_);
  return lines_[static_cast<std::size_t>(n - 1)];
}

bool SourceMap::covers(const Span& span) const {
  if (!span.valid() || span.end_line < span.start_line || span.end_line > line_count()) return false;
  if (span.start_col < 1 || span.start_col > static_cast<int>(line(span.start_line).size())) return false;
  if (span.end_col < 1 || span.end_col > static_cast<int>(line(span.end_line).size())) return false;
  return span.start_line != span.end_line || span.start_col <= span.end_col;
}

std::string SourceMap::snippet(const Span& span) const {
  if (!covers(span)) throw UnknownNode("span " + span.to_string() + " is not in " + file_);
  std::string raw;
  for (int l = span.start_line; l <= span.end_line; ++l) {
    const std::string& text = line(l);
    std::size_t from = l == span.start_line ? static_cast<std::size_t>(span.start_col - 1) : 0;
    std::size_t to = l == span.end_line ? static_cast<std::size_t>(span.end_col) : text.size();
    if (l != span.start_line) raw += ' ';
    raw += text.substr(from, to - from);
  }
  std::string out;
  bool space = false;
  for (char ch : raw) {
    if (ch == ' ' || ch == '\t') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += ch;
  }
  return out;
}

FunctionDef normalize_function(const FunctionDef& f) {
  FunctionDef out = f;
  out.body = Lowering(max_temp_index(f.body) + 1).block(f.body);
  return out;
}

NormProgram normalize(const Program& p) {
  NormProgram out{p, SourceMap(p.file, p.source)};
  for (auto& f : out.program.functions) f = normalize_function(f);
  return out;
}

bool is_flat(const Expr& e) {
  return std::all_of(e.operands.begin(), e.operands.end(), [](const Expr& op) { return op.is_atom(); });
}

bool is_normalized(const FunctionDef& f) { return stmts_normalized(f.body); }

LocationDescription render_location(const Expr& e, const SourceMap& map) {
  LocationDescription d;
  d.normalized_text = frontend::print_expr(e);
  d.original_text = map.snippet(e.span);
  d.original_line = e.span.start_line;
  d.start_col = e.span.start_col;
  d.end_col = e.span.end_col;
  return d;
}

std::string dump_normalized(const FunctionDef& f) {
  std::ostringstream os;
  os.width(5);
  os << f.span.start_line << " | " << to_string(f.return_sort) << ' ' << f.name << '(';
  for (std::size_t i = 0; i < f.params.size(); ++i) {
    if (i) os << ", ";
    os << to_string(f.params[i].sort) << ' ' << f.params[i].name;
  }
  os << ") {\n";
  dump(os, f.body, 1);
  os << "      | }\n";
  return os.str();
}

}  // namespace floc::normalizer
