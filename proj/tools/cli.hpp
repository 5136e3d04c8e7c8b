#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "vck/bench.hpp"
#include "vck/bigint.hpp"
#include "vck/bytes.hpp"
#include "vck/error.hpp"
#include "vck/field.hpp"
#include "vck/fri.hpp"
#include "vck/hash.hpp"
#include "vck/hauth/circuit.hpp"
#include "vck/hauth/hauth.hpp"
#include "vck/stark/stark.hpp"
#include "vck/vdf.hpp"

namespace vck::cli {

enum ExitCode : int { kOk = 0, kReject = 1, kUsage = 2, kInternal = 3 };

// ---------------------------------------------------------------------------
// File envelope: "VCKT" | version | hash id | kind | u64 field modulus | payload.

inline constexpr std::uint8_t kFormatVersion = 1;

enum class FileKind : std::uint8_t {
  kHauthKey = 1,
  kHauthTag = 2,
  kVdfParams = 3,
  kVdfTrapdoor = 4,
  kVdfProof = 5,
  kFriProof = 6,
  kStarkProof = 7,
};

inline const char* to_string(FileKind k) {
  switch (k) {
    case FileKind::kHauthKey: return "hauth key";
    case FileKind::kHauthTag: return "hauth tag";
    case FileKind::kVdfParams: return "vdf parameters";
    case FileKind::kVdfTrapdoor: return "vdf trapdoor";
    case FileKind::kVdfProof: return "vdf proof";
    case FileKind::kFriProof: return "fri proof";
    case FileKind::kStarkProof: return "stark proof";
  }
  return "unknown";
}

struct Envelope {
  FileKind kind{};
  std::uint64_t modulus = 0;
  Bytes payload;
};

inline Bytes wrap(FileKind kind, std::uint64_t modulus, std::span<const std::uint8_t> payload) {
  ByteWriter w;
  w.raw(to_bytes("VCKT"));
  w.u8(kFormatVersion);
  w.u8(static_cast<std::uint8_t>(kHashAlgorithm));
  w.u8(static_cast<std::uint8_t>(kind));
  w.u64(modulus);
  w.raw(payload);
  return std::move(w).bytes();
}

inline Envelope unwrap(std::span<const std::uint8_t> bytes, FileKind expected) {
  ByteReader r(bytes);
  auto magic = r.raw(4);
  if (!std::equal(magic.begin(), magic.end(), "VCKT")) throw ParseError("not a vck file");
  if (r.u8() != kFormatVersion) throw ParseError("unsupported file version");
  if (r.u8() != static_cast<std::uint8_t>(kHashAlgorithm)) throw ParseError("unsupported hash algorithm");
  Envelope e;
  e.kind = static_cast<FileKind>(r.u8());
  if (e.kind != expected) {
    throw UsageError(std::string("expected a ") + to_string(expected) + " file, got " + to_string(e.kind));
  }
  e.modulus = r.u64();
  auto rest = r.raw(r.remaining());
  e.payload.assign(rest.begin(), rest.end());
  return e;
}

inline Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

inline void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

inline std::string read_text(const std::string& path) {
  Bytes b = read_file(path);
  return std::string(b.begin(), b.end());
}

inline BigUint parse_biguint(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789abcdefABCDEFx") != std::string::npos) {
    throw UsageError("not a non-negative integer: '" + s + "'");
  }
  try {
    return BigUint(s);
  } catch (const std::exception&) {
    throw UsageError("not a non-negative integer: '" + s + "'");
  }
}

// ---------------------------------------------------------------------------
// Field selection.

inline std::uint64_t field_modulus(const std::string& name) {
  if (name == "default") return DefaultField::kModulus;
  if (name == "f17") return F17::kModulus;
  if (name == "f13") return F13::kModulus;
  if (name == "f97") return F97::kModulus;
  throw UsageError("unknown field '" + name + "'");
}

template <class Fn>
decltype(auto) with_field(std::uint64_t modulus, Fn&& fn) {
  switch (modulus) {
    case DefaultField::kModulus: return fn(std::type_identity<DefaultField>{});
    case F17::kModulus: return fn(std::type_identity<F17>{});
    case F13::kModulus: return fn(std::type_identity<F13>{});
    case F97::kModulus: return fn(std::type_identity<F97>{});
    default: throw ParseError("unsupported field modulus " + std::to_string(modulus));
  }
}

// ---------------------------------------------------------------------------
// Options shared across subcommands. Every value can also come from the
// config file as `key = value`.

struct Globals {
  std::string field = "default";
  std::string hash = "sha256";
  std::size_t blowup = 8;
  std::size_t queries = 20;
  std::size_t lambda = vdf::kDefaultLambda;
  bool json = false;
};

struct Io {
  std::ostream& out;
  std::ostream& err;
};

// Prints a verdict as text or a JSON record; returns the exit code.
inline int report(const Globals& g, Io io, const std::string& what, bool accepted, const std::string& reason,
                  nlohmann::json extra = nlohmann::json::object()) {
  if (g.json) {
    extra["check"] = what;
    extra["accepted"] = accepted;
    extra["reason"] = reason;
    io.out << extra.dump() << "\n";
  } else {
    io.out << what << ": " << (accepted ? "accepted" : "rejected") << (accepted ? "" : " (" + reason + ")") << "\n";
  }
  return accepted ? kOk : kReject;
}

// ---------------------------------------------------------------------------
// hauth

struct HauthArgs {
  std::string seed, key, key_b, circuit, out, delta = "";
  std::string label;
  std::vector<std::string> labels;
  std::vector<std::string> tags;
  std::vector<int> slots;
  std::int64_t message = 0;
  std::int64_t claimed = 0;
  std::optional<int> slot;
};

template <class F>
hauth::AuthKey<F> load_key(const std::string& path) {
  auto env = unwrap(read_file(path), FileKind::kHauthKey);
  ByteReader r(env.payload);
  auto key = hauth::AuthKey<F>::read(r);
  r.expect_done();
  return key;
}

inline std::uint64_t file_modulus(const std::string& path, FileKind kind) { return unwrap(read_file(path), kind).modulus; }

inline int hauth_keygen(const Globals& g, const HauthArgs& a, Io io) {
  return with_field(field_modulus(g.field), [&]<class F>(std::type_identity<F>) {
    auto key = hauth::AuthKey<F>::keygen(to_bytes(a.seed));
    ByteWriter w;
    key.write(w);
    write_file(a.out, wrap(FileKind::kHauthKey, F::kModulus, w.bytes()));
    io.out << "wrote key to " << a.out << "\n";
    return int{kOk};
  });
}

inline int hauth_auth(const Globals&, const HauthArgs& a, Io io) {
  return with_field(file_modulus(a.key, FileKind::kHauthKey), [&]<class F>(std::type_identity<F>) {
    auto key = load_key<F>(a.key);
    const F m = F::from_signed(a.message);
    const hauth::MultiLabel label{to_bytes(a.label), to_bytes(a.delta)};
    Bytes payload = a.slot ? hauth::serialize_tag(hauth::auth_mk(key, m, label, *a.slot))
                           : hauth::serialize_tag(hauth::Authenticator<F>(key).auth(m, label));
    write_file(a.out, wrap(FileKind::kHauthTag, F::kModulus, payload));
    io.out << "wrote tag to " << a.out << "\n";
    return int{kOk};
  });
}

inline int hauth_eval(const Globals&, const HauthArgs& a, Io io) {
  if (a.tags.empty()) throw UsageError("need at least one input tag");
  return with_field(file_modulus(a.tags.front(), FileKind::kHauthTag), [&]<class F>(std::type_identity<F>) {
    auto circuit = hauth::Circuit<F>::parse(read_text(a.circuit));
    std::vector<Bytes> raw;
    for (const auto& path : a.tags) {
      auto env = unwrap(read_file(path), FileKind::kHauthTag);
      if (env.modulus != F::kModulus) throw UsageError("input tags come from different fields");
      raw.push_back(std::move(env.payload));
    }
    const bool multi = !raw.front().empty() && raw.front().front() == 2;
    Bytes payload;
    if (multi) {
      std::vector<hauth::MultiKeyTag<F>> tags;
      for (const auto& b : raw) tags.push_back(hauth::parse_mk_tag<F>(b));
      payload = hauth::serialize_tag(hauth::eval_mk<F>(circuit, tags));
    } else {
      std::vector<hauth::Tag<F>> tags;
      for (const auto& b : raw) tags.push_back(hauth::parse_tag<F>(b));
      payload = hauth::serialize_tag(hauth::eval<F>(circuit, tags));
    }
    write_file(a.out, wrap(FileKind::kHauthTag, F::kModulus, payload));
    io.out << "wrote evaluated tag to " << a.out << "\n";
    return int{kOk};
  });
}

inline int hauth_verify(const Globals& g, const HauthArgs& a, Io io) {
  if (a.tags.size() != 1) throw UsageError("verify takes exactly one tag file");
  return with_field(file_modulus(a.key, FileKind::kHauthKey), [&]<class F>(std::type_identity<F>) {
    auto key = load_key<F>(a.key);
    auto circuit = hauth::Circuit<F>::parse(read_text(a.circuit));
    auto env = unwrap(read_file(a.tags.front()), FileKind::kHauthTag);
    if (env.modulus != F::kModulus) return report(g, io, "hauth", false, "tag belongs to a different field");
    const F y = F::from_signed(a.claimed);
    hauth::VerifyStatus status;
    if (!a.slots.empty()) {
      if (a.key_b.empty()) throw UsageError("multi-key verification needs --key-b");
      if (a.slots.size() != a.labels.size()) throw UsageError("give one --slot per --label");
      auto key_b = load_key<F>(a.key_b);
      std::vector<hauth::SlottedLabel> labels;
      for (std::size_t i = 0; i < a.labels.size(); ++i) {
        labels.push_back({{to_bytes(a.labels[i]), to_bytes(a.delta)}, a.slots[i]});
      }
      status = hauth::verify_mk<F>(key, key_b, circuit, labels, hauth::parse_mk_tag<F>(env.payload), y);
    } else {
      std::vector<hauth::MultiLabel> labels;
      for (const auto& l : a.labels) labels.push_back({to_bytes(l), to_bytes(a.delta)});
      status = hauth::verify<F>(key, circuit, labels, hauth::parse_tag<F>(env.payload), y);
    }
    return report(g, io, "hauth", status == hauth::VerifyStatus::kAccepted, hauth::to_string(status),
                  {{"status", hauth::to_string(status)}});
  });
}

// ---------------------------------------------------------------------------
// vdf

struct VdfArgs {
  std::size_t bits = 64;
  std::string seed = "vck";
  std::string t = "1024";
  std::optional<double> delay_seconds;
  std::string params, trapdoor, out, proof;
  std::optional<std::string> x;
  std::optional<std::string> input;
  std::size_t rounds = 1;
};

inline vdf::VdfParams load_vdf_params(const std::string& path, const Globals& g) {
  auto env = unwrap(read_file(path), FileKind::kVdfParams);
  ByteReader r(env.payload);
  auto p = vdf::VdfParams::read(r);
  r.expect_done();
  p.lambda = g.lambda;
  return p;
}

inline vdf::TrapdoorKey load_trapdoor(const std::string& path) {
  auto env = unwrap(read_file(path), FileKind::kVdfTrapdoor);
  ByteReader r(env.payload);
  auto k = vdf::TrapdoorKey::read(r);
  r.expect_done();
  return k;
}

inline BigUint vdf_input(const VdfArgs& a, const vdf::VdfParams& p) {
  if (a.x && a.input) throw UsageError("give either --x or --input, not both");
  if (a.x) return parse_biguint(*a.x);
  if (a.input) return hash_to_group(to_bytes(*a.input), p.n);
  throw UsageError("need --x or --input");
}

inline void write_vdf_proof(const std::string& path, const vdf::VdfParams& p, const BigUint& x, const vdf::VdfProof& proof) {
  ByteWriter w;
  vdf::write_proof(w, p, x, proof);
  write_file(path, wrap(FileKind::kVdfProof, 0, w.bytes()));
}

inline int vdf_setup(const Globals& g, const VdfArgs& a, Io io) {
  auto [params, key] = vdf::setup(a.bits, to_bytes(a.seed), 0, g.lambda);
  if (a.delay_seconds) {
    if (*a.delay_seconds <= 0) throw UsageError("--delay-seconds must be positive");
    const double rate = vdf::calibrate_squarings_per_second(params.n, std::chrono::milliseconds(200));
    params.t = BigUint(static_cast<std::uint64_t>(std::max(1.0, rate * *a.delay_seconds)));
    io.err << "calibrated " << static_cast<std::uint64_t>(rate) << " squarings/s\n";
  } else {
    params.t = parse_biguint(a.t);
  }
  if (params.t == 0) throw UsageError("T must be positive");
  ByteWriter w;
  params.write(w);
  write_file(a.out, wrap(FileKind::kVdfParams, 0, w.bytes()));
  if (!a.trapdoor.empty()) {
    ByteWriter tw;
    key.write(tw);
    write_file(a.trapdoor, wrap(FileKind::kVdfTrapdoor, 0, tw.bytes()));
  }
  io.out << "N has " << bit_length(params.n) << " bits, T = " << params.t << "\n";
  return kOk;
}

inline int vdf_eval(const Globals& g, const VdfArgs& a, Io io) {
  auto params = load_vdf_params(a.params, g);
  const BigUint x = vdf_input(a, params);
  const BigUint y = a.trapdoor.empty() ? vdf::eval_sequential(params, x)
                                       : vdf::eval_trapdoor(load_trapdoor(a.trapdoor), params, x);
  if (g.json) {
    io.out << nlohmann::json{{"x", x.str()}, {"y", y.str()}}.dump() << "\n";
  } else {
    io.out << y << "\n";
  }
  return kOk;
}

inline int vdf_prove(const Globals& g, const VdfArgs& a, Io io) {
  auto params = load_vdf_params(a.params, g);
  const BigUint x = vdf_input(a, params);
  vdf::OpCounter ops;
  auto proof = vdf::evaluate_and_prove(params, x, &ops);
  write_vdf_proof(a.out, params, x, proof);
  io.out << "y = " << proof.y << "\nwrote proof to " << a.out << " (" << ops.squarings << " squarings)\n";
  return kOk;
}

inline int vdf_verify(const Globals& g, const VdfArgs& a, Io io) {
  vdf::ProofFile f;
  try {
    auto env = unwrap(read_file(a.proof), FileKind::kVdfProof);
    ByteReader r(env.payload);
    f = vdf::read_proof(r);
    r.expect_done();
  } catch (const ParseError& e) {
    return report(g, io, "vdf", false, std::string("malformed proof file: ") + e.what(), {{"status", "malformed"}});
  }
  vdf::VdfParams params{f.n, f.t, g.lambda};
  vdf::VerifyStatus status;
  try {
    status = vdf::verify(params, f.x, f.proof);
  } catch (const UsageError& e) {
    return report(g, io, "vdf", false, std::string("malformed statement: ") + e.what(), {{"status", "malformed"}});
  }
  const char* reason = status == vdf::VerifyStatus::kEquationFailed ? "equation failure" : vdf::to_string(status);
  return report(g, io, "vdf", status == vdf::VerifyStatus::kAccepted, reason, {{"status", vdf::to_string(status)}});
}

// Chained rounds: round i + 1 hashes the output of round i into the group.
inline int vdf_beacon(const Globals& g, const VdfArgs& a, Io io) {
  auto params = load_vdf_params(a.params, g);
  if (!a.input) throw UsageError("beacon needs --input");
  if (a.rounds == 0) throw UsageError("need at least one round");
  Bytes seed = to_bytes(*a.input);
  vdf::VdfProof proof;
  BigUint x;
  for (std::size_t i = 0; i < a.rounds; ++i) {
    x = hash_to_group(seed, params.n);
    proof = vdf::evaluate_and_prove(params, x);
    seed = to_bytes_be(proof.y);
    const std::string value = to_hex(sha256(seed));
    if (g.json) {
      io.out << nlohmann::json{{"round", i}, {"y", proof.y.str()}, {"beacon", value}}.dump() << "\n";
    } else {
      io.out << "round " << i << ": " << value << "\n";
    }
  }
  if (!a.out.empty()) write_vdf_proof(a.out, params, x, proof);
  return kOk;
}

// ---------------------------------------------------------------------------
// fri

struct FriArgs {
  std::size_t degree = 8;
  std::optional<std::size_t> poly_degree;
  std::uint64_t seed = 0;
  bool subgroup = false;
  bool random = false;
  std::string out, proof;
};

template <class F>
fri::FriParams<F> fri_params(std::size_t size, bool subgroup, std::size_t degree, std::size_t queries) {
  auto domain = subgroup ? EvaluationDomain<F>::subgroup(size) : EvaluationDomain<F>::coset(size, F::generator());
  return fri::FriParams<F>(domain, degree, queries);
}

template <class F>
std::vector<F> fri_input(const FriArgs& a, const fri::FriParams<F>& params) {
  std::mt19937_64 rng(a.seed);
  if (a.random) {
    std::vector<F> evals(params.domain.size());
    for (auto& v : evals) v = F::random(rng);
    return evals;
  }
  const std::size_t deg = a.poly_degree.value_or(a.degree - 1);
  std::vector<F> c(deg + 1);
  for (auto& v : c) v = F::random(rng);
  return evaluate_domain(Polynomial<F>(std::move(c)), params.domain);
}

inline Transcript fri_transcript() { return Transcript("vck/fri"); }

inline int fri_prove(const Globals& g, const FriArgs& a, Io io) {
  return with_field(field_modulus(g.field), [&]<class F>(std::type_identity<F>) {
    auto params = fri_params<F>(a.degree * g.blowup, a.subgroup, a.degree, g.queries);
    fri::ProverOptions opts;
    opts.lenient_final = a.random;
    auto t = fri_transcript();
    auto proof = fri::prove<F>(fri_input<F>(a, params), params, t, opts);
    ByteWriter w;
    w.u64(params.domain.size());
    w.u8(a.subgroup ? 1 : 0);
    w.u64(params.degree_bound);
    w.u64(params.num_queries);
    proof.write(w);
    write_file(a.out, wrap(FileKind::kFriProof, F::kModulus, w.bytes()));
    io.out << "wrote proof to " << a.out << " (" << w.bytes().size() << " bytes)\n";
    return int{kOk};
  });
}

inline int fri_verify(const Globals& g, const FriArgs& a, Io io) {
  auto env = unwrap(read_file(a.proof), FileKind::kFriProof);
  return with_field(env.modulus, [&]<class F>(std::type_identity<F>) {
    try {
      ByteReader r(env.payload);
      const std::uint64_t size = r.u64();
      const bool subgroup = r.u8() != 0;
      const std::uint64_t degree = r.u64();
      const std::uint64_t queries = r.u64();
      auto proof = fri::FriProof<F>::read(r);
      r.expect_done();
      if (size == 0 || size > (std::uint64_t{1} << F::kTwoAdicity)) throw ParseError("bad domain size");
      auto params = fri_params<F>(size, subgroup, degree, queries);
      auto t = fri_transcript();
      auto verdict = fri::verify(proof, params, t);
      nlohmann::json extra{{"domain", size}, {"degree_bound", degree}, {"queries", queries}};
      if (verdict.failing_layer) extra["failing_layer"] = *verdict.failing_layer;
      return report(g, io, "fri", verdict.accepted, verdict.reason, extra);
    } catch (const ParseError& e) {
      return report(g, io, "fri", false, std::string("malformed proof file: ") + e.what());
    } catch (const UsageError& e) {
      return report(g, io, "fri", false, std::string("malformed parameters: ") + e.what());
    }
  });
}

inline int fri_demo(const Globals& g, const FriArgs& a, Io io) {
  return with_field(field_modulus(g.field), [&]<class F>(std::type_identity<F>) {
    auto params = fri_params<F>(a.degree * g.blowup, a.subgroup, a.degree, g.queries);
    bool ok = true;
    for (bool cheat : {false, true}) {
      FriArgs b = a;
      b.random = cheat;
      fri::ProverOptions opts;
      opts.lenient_final = cheat;
      auto tp = fri_transcript(), tv = fri_transcript();
      auto proof = fri::prove<F>(fri_input<F>(b, params), params, tp, opts);
      auto verdict = fri::verify(proof, params, tv);
      ok = ok && verdict.accepted != cheat;
      const char* what = cheat ? "random function" : "low-degree polynomial";
      if (g.json) {
        io.out << nlohmann::json{{"input", what}, {"accepted", verdict.accepted}, {"reason", verdict.reason},
                                 {"proof_bytes", proof.serialize().size()}}
                      .dump()
               << "\n";
      } else {
        io.out << what << ": " << (verdict.accepted ? "accepted" : "rejected (" + verdict.reason + ")") << ", "
               << proof.serialize().size() << " byte proof\n";
      }
    }
    return int{ok ? kOk : kReject};
  });
}

// ---------------------------------------------------------------------------
// stark

struct StarkArgs {
  std::string program = "fib";
  std::size_t length = 8;
  bool zk = false;
  std::uint64_t seed = 0;
  std::uint64_t start = 3;
  std::string boundary, out, proof;
};

template <class F>
stark::Program<F> build_program(const std::string& name, std::size_t length, std::uint64_t start) {
  if (name == "fib") return stark::fibonacci_program<F>(length);
  if (name == "squares") return stark::squares_program<F>(F(start), length);
  throw UsageError("unknown program '" + name + "' (expected fib or squares)");
}

// [{"column": 0, "row": 7, "value": 21}, ...]
template <class F>
std::vector<stark::BoundaryConstraint<F>> parse_boundaries(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("boundary file: ") + e.what());
  }
  if (!j.is_array()) throw UsageError("boundary file must hold a JSON array");
  std::vector<stark::BoundaryConstraint<F>> out;
  for (const auto& item : j) {
    try {
      out.push_back({item.at("column").get<std::uint32_t>(), item.at("row").get<std::uint64_t>(),
                     F::from_signed(item.at("value").get<std::int64_t>())});
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("boundary entry: ") + e.what());
    }
  }
  return out;
}

inline int stark_prove(const Globals& g, const StarkArgs& a, Io io) {
  return with_field(field_modulus(g.field), [&]<class F>(std::type_identity<F>) {
    auto prog = build_program<F>(a.program, a.length, a.start);
    if (!a.boundary.empty()) prog.cs.boundaries = parse_boundaries<F>(read_text(a.boundary));
    stark::StarkParams params{g.blowup, g.queries, a.zk, a.seed};
    auto proof = stark::prove(prog.trace, prog.cs, params);
    ByteWriter w;
    w.str(a.program);
    w.u64(a.length);
    w.u64(a.start);
    w.u32(static_cast<std::uint32_t>(prog.cs.boundaries.size()));
    for (const auto& b : prog.cs.boundaries) {
      w.u32(b.column);
      w.u64(b.row);
      b.value.write(w);
    }
    params.write(w);
    proof.write(w);
    write_file(a.out, wrap(FileKind::kStarkProof, F::kModulus, w.bytes()));
    io.out << "wrote proof to " << a.out << " (" << w.bytes().size() << " bytes, " << proof.trace_rows
           << " committed rows)\n";
    return int{kOk};
  });
}

inline int stark_verify(const Globals& g, const StarkArgs& a, Io io) {
  auto env = unwrap(read_file(a.proof), FileKind::kStarkProof);
  return with_field(env.modulus, [&]<class F>(std::type_identity<F>) {
    try {
      ByteReader r(env.payload);
      const std::string program = r.str();
      const std::uint64_t length = r.u64();
      const std::uint64_t start = r.u64();
      const std::uint32_t count = r.u32();
      if (count > r.remaining()) throw ParseError("boundary count exceeds input");
      std::vector<stark::BoundaryConstraint<F>> boundaries;
      for (std::uint32_t i = 0; i < count; ++i) {
        stark::BoundaryConstraint<F> b;
        b.column = r.u32();
        b.row = r.u64();
        b.value = F::read(r);
        boundaries.push_back(b);
      }
      auto params = stark::StarkParams::read(r);
      auto proof = stark::StarkProof<F>::read(r);
      r.expect_done();
      if (length > (std::uint64_t{1} << F::kTwoAdicity)) throw ParseError("trace length out of range");
      auto prog = build_program<F>(program, length, start);
      prog.cs.boundaries = std::move(boundaries);
      if (!a.boundary.empty()) {
        auto expected = parse_boundaries<F>(read_text(a.boundary));
        bool same = expected.size() == prog.cs.boundaries.size();
        for (std::size_t i = 0; same && i < expected.size(); ++i) {
          same = expected[i].column == prog.cs.boundaries[i].column && expected[i].row == prog.cs.boundaries[i].row &&
                 expected[i].value == prog.cs.boundaries[i].value;
        }
        if (!same) return report(g, io, "stark", false, "proof is for different boundary constraints");
      }
      auto verdict = stark::verify(proof, prog.cs, params);
      nlohmann::json extra{{"program", program}, {"length", length}, {"status", stark::to_string(verdict.status)}};
      if (!g.json) {
        io.out << program << " over " << length << " rows, boundaries:";
        for (const auto& b : prog.cs.boundaries) io.out << " (" << b.column << ", " << b.row << ") = " << b.value;
        io.out << "\n";
      }
      return report(g, io, "stark", verdict.accepted(), verdict.reason, extra);
    } catch (const ParseError& e) {
      return report(g, io, "stark", false, std::string("malformed proof file: ") + e.what());
    } catch (const UsageError& e) {
      return report(g, io, "stark", false, std::string("malformed statement: ") + e.what());
    }
  });
}

// ---------------------------------------------------------------------------
// bench: one JSON line per experiment on stdout, a human summary on stderr.

inline int emit(const bench::Report& r, Io io) {
  io.out << r.record.dump() << "\n";
  io.err << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.summary << " [" << bench::detail::fmt(r.seconds, 3)
         << " s]\n";
  return r.pass ? kOk : kReject;
}

struct BenchArgs {
  bench::TwoPolyOptions two_poly;
  bench::VdfAsymmetryOptions vdf;
  bench::FriSoundnessOptions fri;
  bench::StarkMutationOptions stark;
};

inline int bench_acceptance(Io io) {
  int rc = kOk;
  auto run = [&](const bench::Report& r) {
    if (emit(r, io) != kOk) rc = kReject;
  };
  run(bench::two_poly_soundness({}));
  run(bench::comparison_theorem({}));
  run(bench::vdf_completeness({}));
  run(bench::vdf_asymmetry({}));
  run(bench::vdf_tamper({}));
  run(bench::fri_completeness({}));
  run(bench::fri_soundness({}));
  run(bench::stark_mutation({}));
  run(bench::stark_scalability({}));
  run(bench::stark_zk({}));
  run(bench::hauth_laws({}));
  return rc;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Io io{out, err};
  CLI::App app{"Verifiable-computation toolkit: homomorphic authenticators, VDFs, FRI and STARKs", "vck"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key = value file");

  Globals g;
  app.add_option("--field", g.field, "Prime field: default, f17, f13 or f97")
      ->check(CLI::IsMember({"default", "f17", "f13", "f97"}))
      ->capture_default_str();
  app.add_option("--hash", g.hash, "Hash algorithm")->check(CLI::IsMember({"sha256"}))->capture_default_str();
  app.add_option("--blowup", g.blowup, "LDE blowup factor (power of two)")->capture_default_str();
  app.add_option("--queries", g.queries, "Number of FRI queries")->capture_default_str();
  app.add_option("--lambda", g.lambda, "VDF security parameter (challenge primes have 2*lambda bits)")
      ->capture_default_str();
  app.add_flag("--json", g.json, "Print verdicts as JSON records");

  // hauth
  HauthArgs ha;
  auto* hauth = app.add_subcommand("hauth", "Homomorphic authenticators")->require_subcommand(1);
  auto* h_keygen = hauth->add_subcommand("keygen", "Derive a secret key from a seed");
  h_keygen->add_option("--seed", ha.seed, "Key seed")->required();
  h_keygen->add_option("-o,--output", ha.out, "Key file")->required();
  auto* h_auth = hauth->add_subcommand("auth", "Authenticate a message under a label");
  h_auth->add_option("--key", ha.key, "Key file")->required();
  h_auth->add_option("--message", ha.message, "Message (integer)")->required();
  h_auth->add_option("--label", ha.label, "Constant label part")->required();
  h_auth->add_option("--delta", ha.delta, "Dataset label part");
  h_auth->add_option("--slot", ha.slot, "Produce a two-party tag in slot 0 or 1")->check(CLI::Range(0, 1));
  h_auth->add_option("-o,--output", ha.out, "Tag file")->required();
  auto* h_eval = hauth->add_subcommand("eval", "Evaluate a circuit over tags");
  h_eval->add_option("--circuit", ha.circuit, "Circuit description")->required();
  h_eval->add_option("tags", ha.tags, "Input tag files in wire order")->required();
  h_eval->add_option("-o,--output", ha.out, "Output tag file")->required();
  auto* h_verify = hauth->add_subcommand("verify", "Verify an evaluated tag against a claimed output");
  h_verify->add_option("--key", ha.key, "Key file")->required();
  h_verify->add_option("--key-b", ha.key_b, "Second party's key file (two-party tags)");
  h_verify->add_option("--circuit", ha.circuit, "Circuit description")->required();
  h_verify->add_option("--label", ha.labels, "Input labels in wire order")->required();
  h_verify->add_option("--slot", ha.slots, "Slot of each input (two-party tags)");
  h_verify->add_option("--delta", ha.delta, "Dataset label part");
  h_verify->add_option("--output", ha.claimed, "Claimed output")->required();
  h_verify->add_option("tag", ha.tags, "Tag file")->required();

  // vdf
  VdfArgs va;
  auto* vdf = app.add_subcommand("vdf", "Verifiable delay function")->require_subcommand(1);
  auto* v_setup = vdf->add_subcommand("setup", "Generate an RSA modulus and delay parameter");
  v_setup->add_option("--bits", va.bits, "Bits per prime")->capture_default_str();
  v_setup->add_option("--seed", va.seed, "Setup seed")->capture_default_str();
  auto* t_opt = v_setup->add_option("--t", va.t, "Number of squarings")->capture_default_str();
  v_setup->add_option("--delay-seconds", va.delay_seconds, "Pick T from a squaring-speed calibration")
      ->excludes(t_opt);
  v_setup->add_option("-o,--output", va.out, "Parameter file")->required();
  v_setup->add_option("--trapdoor", va.trapdoor, "Also write the factorization here");
  auto* v_eval = vdf->add_subcommand("eval", "Evaluate without a proof");
  auto* v_prove = vdf->add_subcommand("prove", "Evaluate and prove");
  for (auto* sc : {v_eval, v_prove}) {
    sc->add_option("--params", va.params, "Parameter file")->required();
    sc->add_option("--x", va.x, "Group element");
    sc->add_option("--input", va.input, "Bytes to hash into the group");
  }
  v_eval->add_option("--trapdoor", va.trapdoor, "Evaluate with the trapdoor instead");
  v_prove->add_option("-o,--output", va.out, "Proof file")->required();
  auto* v_verify = vdf->add_subcommand("verify", "Verify a proof file");
  v_verify->add_option("proof", va.proof, "Proof file")->required();
  auto* v_beacon = vdf->add_subcommand("beacon", "Chained randomness beacon");
  v_beacon->add_option("--params", va.params, "Parameter file")->required();
  v_beacon->add_option("--input", va.input, "Seed bytes")->required();
  v_beacon->add_option("--rounds", va.rounds, "Number of rounds")->capture_default_str();
  v_beacon->add_option("-o,--output", va.out, "Write the last round's proof here");

  // fri
  FriArgs fa;
  auto* fri = app.add_subcommand("fri", "FRI low-degree test")->require_subcommand(1);
  auto* f_prove = fri->add_subcommand("prove", "Prove that a random polynomial has low degree");
  auto* f_demo = fri->add_subcommand("demo", "Prove an honest and a random input and verify both");
  for (auto* sc : {f_prove, f_demo}) {
    sc->add_option("--degree", fa.degree, "Degree bound d (power of two)")->capture_default_str();
    sc->add_option("--seed", fa.seed, "Input seed")->capture_default_str();
    sc->add_flag("--subgroup", fa.subgroup, "Use the subgroup instead of a coset");
  }
  f_prove->add_option("--poly-degree", fa.poly_degree, "Degree of the committed polynomial (default d - 1)");
  f_prove->add_flag("--random", fa.random, "Commit to random evaluations instead");
  f_prove->add_option("-o,--output", fa.out, "Proof file")->required();
  auto* f_verify = fri->add_subcommand("verify", "Verify a proof file");
  f_verify->add_option("proof", fa.proof, "Proof file")->required();

  // stark
  StarkArgs sa;
  auto* stark = app.add_subcommand("stark", "STARK proofs for built-in programs")->require_subcommand(1);
  auto* s_prove = stark->add_subcommand("prove", "Prove a program execution");
  s_prove->add_option("--program", sa.program, "fib or squares")->check(CLI::IsMember({"fib", "squares"}))
      ->capture_default_str();
  s_prove->add_option("--length", sa.length, "Trace length")->capture_default_str();
  s_prove->add_option("--start", sa.start, "Starting value for squares")->capture_default_str();
  s_prove->add_flag("--zk", sa.zk, "Zero-knowledge padding");
  s_prove->add_option("--seed", sa.seed, "Padding seed")->capture_default_str();
  s_prove->add_option("--boundary", sa.boundary, "JSON file of boundary constraints");
  s_prove->add_option("-o,--output", sa.out, "Proof file")->required();
  auto* s_verify = stark->add_subcommand("verify", "Verify a proof file");
  s_verify->add_option("proof", sa.proof, "Proof file")->required();
  s_verify->add_option("--boundary", sa.boundary, "Require these boundary constraints");

  // bench
  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Monte Carlo experiments")->require_subcommand(1);
  auto* b_2poly = bench->add_subcommand("2poly", "Probabilistic polynomial equality false-accept rate");
  b_2poly->add_option("--d", ba.two_poly.degree, "Degree")->capture_default_str();
  b_2poly->add_option("--domain", ba.two_poly.domain, "Domain size")->capture_default_str();
  b_2poly->add_option("--trials", ba.two_poly.trials, "Trials")->capture_default_str();
  b_2poly->add_option("--k", ba.two_poly.queries, "Queries per trial")->capture_default_str();
  b_2poly->add_option("--seed", ba.two_poly.seed, "Seed")->capture_default_str();
  auto* b_vdf = bench->add_subcommand("vdf-asymmetry", "VDF prover versus verifier work");
  b_vdf->add_option("--log-t", ba.vdf.log_t, "log2 T")->capture_default_str();
  b_vdf->add_option("--bits", ba.vdf.prime_bits, "Bits per prime")->capture_default_str();
  auto* b_fri = bench->add_subcommand("fri-soundness", "FRI rejection rate on random functions");
  b_fri->add_option("--domain", ba.fri.domain, "Domain size")->capture_default_str();
  b_fri->add_option("--degree", ba.fri.degree, "Claimed degree bound")->capture_default_str();
  b_fri->add_option("--trials", ba.fri.trials, "Trials")->capture_default_str();
  b_fri->add_option("--seed", ba.fri.seed, "Seed")->capture_default_str();
  auto* b_stark = bench->add_subcommand("stark-mutation", "STARK rejection rate on mutated traces");
  b_stark->add_option("--length", ba.stark.length, "Trace length")->capture_default_str();
  b_stark->add_option("--mutations", ba.stark.mutations, "Mutated traces")->capture_default_str();
  b_stark->add_option("--seed", ba.stark.seed, "Seed")->capture_default_str();
  auto* b_all = bench->add_subcommand("acceptance", "Run every acceptance experiment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (g.blowup < 2 || !std::has_single_bit(g.blowup)) throw UsageError("--blowup must be a power of two");
    if (g.lambda < 4 || g.lambda > 256) throw UsageError("--lambda must lie in [4, 256]");

    if (h_keygen->parsed()) return hauth_keygen(g, ha, io);
    if (h_auth->parsed()) return hauth_auth(g, ha, io);
    if (h_eval->parsed()) return hauth_eval(g, ha, io);
    if (h_verify->parsed()) return hauth_verify(g, ha, io);
    if (v_setup->parsed()) return vdf_setup(g, va, io);
    if (v_eval->parsed()) return vdf_eval(g, va, io);
    if (v_prove->parsed()) return vdf_prove(g, va, io);
    if (v_verify->parsed()) return vdf_verify(g, va, io);
    if (v_beacon->parsed()) return vdf_beacon(g, va, io);
    if (f_prove->parsed()) return fri_prove(g, fa, io);
    if (f_verify->parsed()) return fri_verify(g, fa, io);
    if (f_demo->parsed()) return fri_demo(g, fa, io);
    if (s_prove->parsed()) return stark_prove(g, sa, io);
    if (s_verify->parsed()) return stark_verify(g, sa, io);
    if (b_2poly->parsed()) {
      return emit(with_field(field_modulus(g.field), [&]<class F>(std::type_identity<F>) {
                    return bench::two_poly_soundness<F>(ba.two_poly);
                  }),
                  io);
    }
    if (b_vdf->parsed()) {
      ba.vdf.lambda = g.lambda;
      return emit(bench::vdf_asymmetry(ba.vdf), io);
    }
    if (b_fri->parsed()) {
      ba.fri.queries = g.queries;
      return emit(bench::fri_soundness(ba.fri), io);
    }
    if (b_stark->parsed()) {
      ba.stark.blowup = g.blowup;
      ba.stark.queries = g.queries;
      return emit(bench::stark_mutation(ba.stark), io);
    }
    if (b_all->parsed()) return bench_acceptance(io);
    throw InternalError("no command handled");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "rejected: malformed input: " << e.what() << "\n";
    return kReject;
  } catch (const ConstraintViolation& e) {
    err << "rejected: " << e.what() << "\n";
    return kReject;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace vck::cli
