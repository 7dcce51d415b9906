#include <algorithm>
#include <map>

#include "holoforge/claims.hpp"
#include "holoforge/error.hpp"

namespace holoforge {

namespace {

using Values = std::map<std::string, std::int64_t>;

Values values_of(const PaperParams& q) {
  auto pw = [](std::int64_t b, std::int64_t k) -> std::int64_t {
    if (k < 0) return -1;
    std::int64_t r = 1;
    while (k-- > 0) r *= b;
    return r;
  };
  return {{"p", q.p},         {"pn", pw(q.p, q.n)}, {"pm1", q.p - 1},   {"n1", q.n1},
          {"n2", q.n2},       {"n3", q.n3},         {"n4", q.n4},       {"x", q.x},
          {"y", q.y},         {"v", q.v},           {"w", q.w},         {"z", q.z},
          {"z1", q.z1},       {"s", q.s},           {"t_exp", q.t_exp}, {"tt", q.tt},
          {"ap", q.ap},       {"af", q.af},         {"x_root", q.x_root}, {"y1", q.y1},
          {"x2", q.x2},       {"y_t5", q.y_t5},     {"y1_t5", q.y1_t5}, {"yt", q.yt},
          {"n1_t3", q.n1_t3}, {"n2_t3", q.n2_t3},   {"n3_t3", q.n3_t3}, {"n4_t3", q.n4_t3}};
}

// Replaces each {key} by its value.
std::string substitute(const std::string& text, const Values& vals) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '{') {
      out += text[i];
      continue;
    }
    auto close = text.find('}', i);
    std::string key = text.substr(i + 1, close - i - 1);
    auto it = vals.find(key);
    if (it == vals.end()) throw Error(ErrorCode::kInternal, "no parameter " + key);
    if (it->second < 0)
      throw Error(ErrorCode::kOutOfRange, "parameter " + key + " is not integral here");
    out += std::to_string(it->second);
    i = close;
  }
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kOutOfRange, what);
}

bool has(const std::string& interp, const std::string& part) {
  std::size_t start = 0;
  while (start <= interp.size()) {
    auto end = interp.find('+', start);
    if (end == std::string::npos) end = interp.size();
    if (interp.compare(start, end - start, part) == 0) return true;
    start = end + 1;
  }
  return false;
}

ActionTable parse_action(const std::vector<std::vector<std::string>>& rows,
                         const std::vector<std::string>& group_names, const Values& vals) {
  ActionTable t;
  for (const auto& row : rows) {
    std::vector<Word> images;
    for (const auto& w : row) images.push_back(parse_word(substitute(w, vals), group_names));
    t.images.push_back(std::move(images));
  }
  return t;
}

const char* kEq3 =
    "gens: c d e f\n"
    "rels: c^4, d^2, c^d*c, e^{n2}, c^2*e^{n4}, (c,e), (d,e), f^2, (c,f), (d,f), (e,f)\n";

const char* kEq4 =
    "gens: a b c d e f\n"
    "rels: a^{n1}, b^2, (a,b), c^4, d^2, c^d*c, e^{n2}, c^2*e^{n4}, (c,e), (d,e),\n"
    "  f^2, (c,f), (d,f), (e,f), a^c*a*b, b^c*b*a^-{n3},\n"
    "  a^d*a*b, (b,d), a^e*a^{e5}, (b,e), a^f*a, (b,f)\n";

const char* kTable2 =
    "gens: a b c d e f g h\n"
    "rels: a^2, b^2, c^2, d^2, (a,b), (a,c), (a,d), (b,c), (b,d), (c,d),\n"
    "  e^{x}, f^{y}, g^2, (f,g), e^f*e^-5, e^g*e,\n"
    "  a*e^{v}, c*f^{w}, (a,g), (b,g), (c,g), (d,g),\n"
    "  (a,e), (b,e), c^e*a*c, d^e*b*d,\n"
    "  (a,f), (b,f), (c,f), (d,f),\n"
    "  h^2, (a,h), b^h*a*b, (c,h), d^h*c*d,\n"
    "  (e,h), (f,h), (g,h)\n";

const char* kTable3 =
    "gens: a b c d e f x y s t u\n"
    "rels: a^2, b^2, c^2, d^2, e^2, f^2,\n"
    "  (a,b), (a,c), (a,d), (a,e), (a,f), (b,c), (b,d), (b,e), (b,f), (c,d),\n"
    "  (c,e), (c,f), (d,e), (d,f), (e,f),\n"
    "  x^4, y^4, x^2*y*x^-2*y, x*y*x*(y*x*y)^-1,\n"
    "  (a,x), b^x*a*b, c^x*a*b*c, (a,y), b^y*a*b*c, c^y*a*c,\n"
    "  (d,x), e^x*d*e, f^x*d*e*f, (d,y), e^y*d*e*f, f^y*d*f,\n"
    "  s^{n1_t3}, t^{n2_t3}, u^2, (t,u), s^t*s^-5, s^u*s, s^{n3_t3}*a{t3_extra},\n"
    "  (a,s), (b,s), (c,s), d^s*a*d, e^s*b*e, f^s*c*f, (s,x), (s,y),\n"
    "  (a,t), (b,t), (c,t), (d,t), (e,t), (f,t), (x,t), (y,t),\n"
    "  (a,u), (b,u), (c,u), (d,u), (e,u), (f,u), (x,u), (y,u)\n";

const char* kTPres =
    "gens: t1 t2 t3 t4\n"
    "rels: t1^2, t2^2, t3^2, t4^2, (t1,t2), (t1,t4), (t3*t4)^3, (t1*t4)^4,\n"
    "  (t1*t3*t2*t3)^2, (t2*t3)^4, (t2*t4)^4, (t2*t3*t4*t3)^3,\n"
    "  t1*t2*t4*t3*t1*t3*t4*t2*t4*t3*t1*t3*t4,\n"
    "  t2*t3*t2*t3*t4*t2*t4*t3*t2*t3*t4*t2*t4\n";

// Shared by the p = 3 and general odd p forms.
const char* kAutOdd =
    "gens: a b c d e f\n"
    "rels: a^{p}, b^{p}, c^{p}, (a,b), (a,c), b^c*a^-1*b^-1,\n"
    "  f^{z}, (a,f), (b,f), (c,f), a*f^-{z1},\n"
    "  d^{pm1}, (a,d), b^d*b^-{s}, c^d*c^-{t_exp},\n"
    "  e^{pm1}, (a,e), (b,e), (c,e), (d,e){df_ef}\n";

const char* kS7Hol =
    "gens: P Q a b c d e f\n"
    "rels: a^3, b^3, c^3, (a,b), (a,c), b^c*a^-1*b^-1,\n"
    "  f^{z}, (a,f), (b,f), (c,f), a*f^-{z1},\n"
    "  d^2, (a,d), b^d*b, c^d*c, e^2,\n"
    "  (a,e), (b,e), (c,e), (d,e){df_ef},\n"
    "  P^{pn}, Q^3, (P,Q),\n"
    "  P^a*P^-{ap}, (b,P), {pc}, P^d*P,\n"
    "  P^e*P^-{x_root}, P^f*P^-{af},\n"
    "  (Q,a), {qb}, (c,Q), (d,Q), Q^e*Q, (Q,f)\n";

const char* kTable5 =
    "gens: a b c d e1 f1 e f\n"
    "rels: a^3, b^3, c^3, d^3, (a,b), (a,c), (a,d), (b,c), (b,d), (c,d),\n"
    "  e1^3, f1^2, e1^f1*e1,\n"
    "  a^e1*a^-1*b^-1, (b,e1), a^f1*a, (b,f1), c^e1*c^-1*d^-1, (d,e1), c^f1*c, (d,f1),\n"
    "  e^{pn}, f^{y_t5}, {ef},\n"
    "  e^{x2}*b, d^-1*f^{fy}, (e,e1), (e,f1), (f,e1), (f,f1),\n"
    "  (a,e), {ce}, a^f*a, (c,f), (b,e), {de}, b^f*b, (d,f)\n";

const char* kOddGroup = "gens: P Q\nrels: P^{pn}, Q^{p}, (P,Q)\n";

std::string with_text(std::string tmpl, const std::map<std::string, std::string>& parts) {
  for (const auto& [k, v] : parts) {
    std::string key = "{" + k + "}";
    for (auto pos = tmpl.find(key); pos != std::string::npos; pos = tmpl.find(key, pos + v.size()))
      tmpl.replace(pos, key.size(), v);
  }
  return tmpl;
}

void check_interpretation(const std::string& id, const std::string& interp) {
  auto all = interpretations(id);
  if (std::find(all.begin(), all.end(), interp) == all.end())
    throw Error(ErrorCode::kUnknownClaim, "no interpretation '" + interp + "' for " + id);
}

}  // namespace

std::vector<std::string> interpretations(const std::string& id) {
  if (id == "eq3" || id == "table2" || id == "table2_qd" || id == "t_pres") return {"literal"};
  if (id == "eq4") return {"literal", "e-sign"};
  if (id == "table3") return {"literal", "t-relator-always"};
  if (id == "s6_aut" || id == "s9_aut") return {"literal", "df-ef-commute"};
  if (id == "s7_hol" || id == "s9_hol") return {"literal", "bc-swap", "bc-swap+df-ef-commute"};
  if (id == "table5" || id == "table5_alt")
    return {"literal",      "de-conj",         "de-conj-inv",
            "ce-fix", "ce-fix+de-conj", "ce-fix+de-conj-inv"};
  throw Error(ErrorCode::kUnknownClaim, "unknown presentation id " + id);
}

PaperPresentation paper_presentation(const std::string& id, const PaperParams& q,
                                     const std::string& interp) {
  check_interpretation(id, interp);
  PaperPresentation out;
  out.id = id;
  out.interpretation = interp;
  Values vals = values_of(q);
  auto finish = [&](const std::string& tmpl, const std::map<std::string, std::string>& parts = {}) {
    out.presentation = parse_presentation(substitute(with_text(tmpl, parts), vals));
  };

  if (id == "eq3" || id == "eq4") {
    require(q.p == 2 && q.n >= 3, id + " needs p = 2 and n >= 3 (n4 = 2^(n-3))");
    if (id == "eq3") {
      finish(kEq3);
      return out;
    }
    vals["e5"] = 0;
    finish(with_text(kEq4, {{"e5", has(interp, "e-sign") ? "-5" : "5"}}));
    out.group = parse_presentation(substitute("gens: a b\nrels: a^{n1}, b^2, (a,b)\n", vals));
    out.aut = parse_presentation(substitute(kEq3, vals));
    out.action = parse_action({{"a^-1*b^-1", "a^{n3}*b^-1"},
                               {"a^-1*b", "b"},
                               {has(interp, "e-sign") ? "a^5" : "a^-5", "b"},
                               {"a^-1", "b"}},
                              {"a", "b"}, vals);
    return out;
  }
  if (id == "table2" || id == "table2_qd") {
    require(q.p == 2 && q.n >= 3, id + " needs p = 2 and n >= 3 (w = 2^(n-3))");
    if (id == "table2_qd") vals["x"] = q.t;
    finish(kTable2);
    return out;
  }
  if (id == "table3") {
    require(q.p == 2 && q.m >= 3, "table3 needs p = 2 and m >= 3 (n4 = 2^(m-3))");
    bool extra = q.m > 3 || has(interp, "t-relator-always");
    finish(kTable3, {{"t3_extra", extra ? ", t^{n4_t3}*d" : ""}});
    return out;
  }
  if (id == "t_pres") {
    finish(kTPres);
    return out;
  }
  if (id == "s6_aut" || id == "s9_aut") {
    require(id == "s9_aut" ? q.p >= 3 : q.p == 3, id == "s9_aut" ? "s9_aut needs an odd prime"
                                                                 : "s6_aut needs p = 3");
    require(q.n >= 2, id + " needs n >= 2 (z1 = p^(n-2))");
    finish(kAutOdd, {{"df_ef", has(interp, "df-ef-commute") ? ", (d,f), (e,f)" : ""}});
    return out;
  }
  if (id == "s7_hol" || id == "s9_hol") {
    require(id == "s9_hol" ? q.p >= 3 : q.p == 3, id == "s9_hol" ? "s9_hol needs an odd prime"
                                                                 : "s7_hol needs p = 3");
    require(q.n >= 2, id + " needs n >= 2 (z1 = p^(n-2))");
    bool swap = has(interp, "bc-swap");
    std::string df_ef = has(interp, "df-ef-commute") ? ", (d,f), (e,f)" : "";
    out.group = parse_presentation(substitute(kOddGroup, vals));
    std::vector<std::string> gnames{"P", "Q"};
    if (id == "s7_hol") {
      finish(kS7Hol, {{"df_ef", df_ef},
                      {"pc", swap ? "P^c*Q^-1*P^-1" : "P^c*P^-{tt}*Q^-1"},
                      {"qb", swap ? "Q^b*Q^-1*P^-{tt}" : "Q^b*P^-1*Q^-1"}});
      // The automorphism part exactly as it appears in the holomorph.
      auto full = out.presentation;
      Presentation aut;
      aut.names = {"a", "b", "c", "d", "e", "f"};
      for (const auto& r : full.relators) {
        std::vector<Syllable> syl = r.syllables();
        if (!std::all_of(syl.begin(), syl.end(), [](const Syllable& s) { return s.gen >= 2; }))
          continue;
        for (auto& s : syl) s.gen -= 2;
        aut.relators.push_back(Word(std::move(syl)));
      }
      out.aut = aut;
      out.action = parse_action({{"P^{ap}", "Q"},
                                 {"P", swap ? "P^{tt}*Q" : "P*Q"},
                                 {swap ? "P*Q" : "P^{tt}*Q", "Q"},
                                 {"P^-1", "Q"},
                                 {"P^{x_root}", "Q^-1"},
                                 {"P^{af}", "Q"}},
                                gnames, vals);
      return out;
    }
    out.aut = parse_presentation(substitute(with_text(kAutOdd, {{"df_ef", df_ef}}), vals));
    out.action = parse_action({{"P^{ap}", "Q"},
                               {"P", swap ? "P^{tt}*Q" : "P*Q"},
                               {swap ? "P*Q" : "P^{tt}*Q", "Q"},
                               {"P^-1", "Q^{y1}"},
                               {"P^{x_root}", "Q^{y1}"},
                               {"P^{af}", "Q"}},
                              gnames, vals);
    out.presentation = extend_presentation(*out.group, *out.aut, *out.action);
    return out;
  }
  if (id == "table5" || id == "table5_alt") {
    require(q.p == 3 && q.n >= 2, id + " needs p = 3 and n >= 2 (y1 = 2*3^(n-2))");
    bool alt = id == "table5_alt";
    std::string de = has(interp, "de-conj-inv") ? "d^e*b^-1*d^-1"
                     : has(interp, "de-conj")   ? "d^e*b*d^-1"
                                                : "d*e*b*d^-1";
    finish(kTable5, {{"ef", alt ? "e^f*e^-2" : "e^f*e^4"},
                     {"fy", alt ? "{yt}" : "{y1_t5}"},
                     {"ce", has(interp, "ce-fix") ? "c^e*a*c^-1" : "c^e*a^-1*b^-1"},
                     {"de", de}});
    return out;
  }
  throw Error(ErrorCode::kUnknownClaim, "unknown presentation id " + id);
}

}  // namespace holoforge
