#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run dstab_run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = dstab::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

const std::string p2_ambient = R"({"n":2,"d":1,"muhat_O":"2","muhat_omega":"-1","mu_omega":"-3"})";
const std::string p2_doc = R"({"ambient":)" + p2_ambient + "}";

std::string doc_with(const std::string& extra) { return R"({"ambient":)" + p2_ambient + "," + extra + "}"; }

}  // namespace

TEST(Cli, HnFactor) {
    auto r = dstab_run({"hn", "factor", "360"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"factors\":[\"5\",\"9\",\"8\"]}\n");
    auto e = dstab_run({"hn", "factor", "360", "--engine"});
    EXPECT_EQ(e.out, "{\"factors\":[\"5\",\"9\",\"8\"],\"verified\":true}\n");
    auto unit = dstab_run({"hn", "factor", "1"});
    EXPECT_EQ(unit.out, "{\"factors\":[],\"unit\":true}\n");
    EXPECT_EQ(dstab_run({"hn", "factor", "0"}).code, 2);
    EXPECT_EQ(dstab_run({"hn", "factor", "abc"}).code, 2);
}

TEST(Cli, HnJhAndVec) {
    EXPECT_EQ(dstab_run({"hn", "jh", "5"}).out, "{\"length\":4}\n");
    EXPECT_EQ(dstab_run({"hn", "jh", "0"}).code, 2);
    EXPECT_EQ(dstab_run({"hn", "vec", "2,5,9"}).out, "{\"factors\":[[9],[5],[2]]}\n");
    EXPECT_EQ(dstab_run({"hn", "vec", "2,2"}).code, 2);
}

TEST(Cli, MminFromFileAndStdin) {
    const auto path = std::filesystem::temp_directory_path() / "dstab_cli_p2.json";
    {
        std::ofstream f(path);
        f << p2_doc;
    }
    auto r = dstab_run({"bound", "mmin", "--m1", "0", "--m2", "1", "-f", path.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"mmin\":1}\n");
    EXPECT_EQ(dstab_run({"bound", "mmin", "--m1", "2", "--m2", "1"}, p2_doc).out, "{\"mmin\":2}\n");
    std::filesystem::remove(path);
    EXPECT_EQ(dstab_run({"bound", "mmin", "-f", "/nonexistent/dstab.json"}).code, 2);
}

TEST(Cli, Selftest) {
    auto r = dstab_run({"selftest"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("\"pass\":true"), std::string::npos);
}

TEST(Cli, InputErrorsExitTwo) {
    EXPECT_EQ(dstab_run({"bound", "validate"}, "{not json").code, 2);
    EXPECT_EQ(dstab_run({"bound", "validate"}, R"({"ambient":{"n":2,"d":1,"muhat_O":0,"muhat_omega":0,"extra":1}})").code, 2);
    EXPECT_EQ(dstab_run({"bound", "validate"}, R"({"ambiant":{}})").code, 2);
    EXPECT_EQ(dstab_run({"bound", "validate"}, R"({"ambient":{"n":2,"d":1,"muhat_O":0.5,"muhat_omega":0}})").code, 2);
    EXPECT_EQ(dstab_run({"bound", "check"}, p2_doc).code, 2);  // no class
    EXPECT_EQ(dstab_run({"frobnicate"}).code, 2);
    EXPECT_EQ(dstab_run({}).code, 2);
    auto help = dstab_run({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("hn"), std::string::npos);
}

TEST(Cli, BoundCommands) {
    auto v = dstab_run({"bound", "validate"}, p2_doc);
    EXPECT_EQ(v.code, 0);
    EXPECT_EQ(v.out, "{\"pass\":true,\"reasons\":[]}\n");
    auto bad = dstab_run({"bound", "validate"},
                         R"({"ambient":{"n":2,"d":1,"muhat_O":"2","muhat_omega":"-1","mu_omega":-4}})");
    EXPECT_EQ(bad.code, 1);

    EXPECT_EQ(dstab_run({"bound", "pbar", "--muhat", "1/2"}, p2_doc).out,
              "{\"mode\":\"default\",\"muhat\":\"1/2\",\"pbar\":\"-1/8\"}\n");
    EXPECT_EQ(dstab_run({"bound", "pbar", "--muhat=5"}, p2_doc).out,
              "{\"mode\":\"default\",\"muhat\":\"5\",\"pbar\":\"10\"}\n");
    // mu = 3 on the plane is muhat = 5
    EXPECT_EQ(dstab_run({"bound", "pbar", "--mu", "3"}, p2_doc).out,
              "{\"mode\":\"default\",\"muhat\":\"5\",\"pbar\":\"10\"}\n");
    EXPECT_EQ(dstab_run({"bound", "pbar", "--muhat", "2", "--max", "3", "--min", "1"}, p2_doc).out,
              "{\"mode\":\"general\",\"muhat\":\"2\",\"pbar\":\"3/2\"}\n");
    EXPECT_EQ(dstab_run({"bound", "pbar", "--muhat", "2", "--mode=sup2"}, p2_doc).out,
              "{\"mode\":\"sup2\",\"muhat\":\"2\",\"pbar\":\"1\"}\n");
    EXPECT_EQ(dstab_run({"bound", "pbar", "--muhat", "2", "--mode", "crude"}, p2_doc).out,
              "{\"mode\":\"crude\",\"muhat\":\"2\",\"pbar\":\"3/2\"}\n");
    EXPECT_EQ(dstab_run({"bound", "pbar", "--mode", "weird", "--muhat", "1"}, p2_doc).code, 2);

    auto ok = dstab_run({"bound", "check"}, doc_with(R"("class":{"chi":[1,-2,1]})"));
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(ok.out, "{\"pass\":true,\"lhs\":\"1\",\"rhs\":\"1\",\"margin\":\"0\"}\n");
    EXPECT_EQ(dstab_run({"bound", "check"}, doc_with(R"("class":{"chi":[1,-2,2]})")).code, 1);

    EXPECT_EQ(dstab_run({"bound", "restrict"}, doc_with(R"("class":{"chi":[2,-4,2]})")).out,
              "{\"threshold\":\"1/2\",\"l\":1}\n");
    EXPECT_EQ(dstab_run({"bound", "restrict"}, doc_with(R"("class":{"chi":[1,-2,1]})")).code, 2);

    EXPECT_EQ(dstab_run({"bound", "slopes"}, doc_with(R"("class":[1,1,1])")).out,
              "{\"rank\":\"1\",\"deg\":\"-3\",\"mu\":\"-3\",\"muhat\":\"-1\"}\n");
    EXPECT_EQ(dstab_run({"bound", "pushforward", "--mu", "0"}, p2_doc).out, "{\"upper\":\"0\",\"lower\":\"0\"}\n");

    auto lan = dstab_run({"bound", "lan"}, R"({"options":{"r":[2,1,1],"mu":[2,1,0]}})");
    EXPECT_EQ(lan.out, "{\"lhs\":\"11\",\"rhs\":\"15\",\"holds\":true}\n");
    EXPECT_EQ(dstab_run({"bound", "lan"}, R"({"options":{"r":[1,1],"mu":[0,1]}})").code, 2);

    auto bog = dstab_run({"bound", "bogomolov"}, R"({"chern":{"rank":2,"c1_sq":1,"c1_H":1,"c2":0}})");
    EXPECT_EQ(bog.code, 1);
    EXPECT_EQ(bog.out, "{\"discriminant\":\"1\",\"certificate\":true,\"verdict\":\"not strongly semistable\"}\n");
    auto bog2 = dstab_run({"bound", "bogomolov"}, doc_with(R"("chern":{"rank":1,"c2":5,"chi_OO":1})"));
    EXPECT_EQ(bog2.code, 0);
    EXPECT_NE(bog2.out.find("\"delta_bound\""), std::string::npos);

    auto hodge = dstab_run({"bound", "hodge", "--c1sq", "1", "--int", "0", "--csq", "1", "--bound", "10"});
    EXPECT_EQ(hodge.code, 1);
    EXPECT_EQ(hodge.out, "{\"hodge\":false,\"witness\":5}\n");
    auto neg = dstab_run({"bound", "hodge", "--c1sq=-2", "--int", "0", "--csq", "1", "--bound", "10"});
    EXPECT_EQ(neg.code, 0);
    EXPECT_EQ(neg.out, "{\"hodge\":true,\"witness\":null}\n");
}

TEST(Cli, PolyCommands) {
    EXPECT_EQ(dstab_run({"poly", "fit", "1", "3", "6"}).out, "{\"coeffs\":[\"1\",\"2\",\"1\"]}\n");
    EXPECT_EQ(dstab_run({"poly", "fit", "--", "-1", "3"}).out, "{\"coeffs\":[\"-1\",\"4\"]}\n");
    EXPECT_EQ(dstab_run({"poly", "eval", "--coeffs", "1", "2", "1", "--at", "4"}).out, "{\"value\":\"15\"}\n");
    EXPECT_EQ(dstab_run({"poly", "eval", "--coeffs", "1", "1", "--at", "i"}).out, "{\"re\":\"1\",\"im\":\"1\"}\n");
    EXPECT_EQ(dstab_run({"poly", "eval", "--coeffs", "0", "0", "1", "--at", "3/2"}).out, "{\"value\":\"3/8\"}\n");

    auto pos = dstab_run({"poly", "check-positive"}, R"({"options":{"samples":[[1,0,0],[0,2,0],[0,0,3]]}})");
    EXPECT_EQ(pos.code, 0);
    EXPECT_EQ(pos.out, "{\"positive\":true,\"exhaustive\":true,\"violations\":[],\"zero_tuples\":[]}\n");
    EXPECT_EQ(dstab_run({"poly", "check-positive"}, R"({"options":{"samples":[[-1,5,0]]}})").code, 1);
    auto zero = dstab_run({"poly", "check-positive"}, R"({"options":{"samples":[[0,0,0]]}})");
    EXPECT_EQ(zero.code, 0);
    EXPECT_NE(zero.out.find("\"exhaustive\":false"), std::string::npos);
}

TEST(Cli, P1Commands) {
    const std::string e = R"({"p1":{"bundles":[2,-1],"torsion":[{"pt":"p","len":1}]}})";
    EXPECT_EQ(dstab_run({"p1", "hn"}, e).out,
              "{\"factors\":[{\"bundles\":[],\"torsion\":[{\"pt\":\"p\",\"len\":1}]},"
              "{\"bundles\":[2],\"torsion\":[]},{\"bundles\":[-1],\"torsion\":[]}]}\n");
    EXPECT_EQ(dstab_run({"p1", "hilbert"}, R"({"bundles":[2,-1]})").out, "{\"coeffs\":[\"3\",\"2\"]}\n");
    EXPECT_EQ(dstab_run({"p1", "kronecker"}, R"({"bundles":[1]})").out,
              "{\"shifted\":{\"bundles\":[],\"torsion\":[]},\"plain\":{\"bundles\":[1],\"torsion\":[]},"
              "\"slope\":\"3\",\"dim\":[\"2\",\"1\"]}\n");
    EXPECT_EQ(dstab_run({"p1", "hn"}, R"({"bundles":[],"torsion":[]})").code, 2);
    EXPECT_EQ(dstab_run({"p1", "hn"}, R"({"bundles":[1],"extra":2})").code, 2);
}

TEST(Cli, ChargeCommands) {
    const std::string sky = doc_with(R"("class":{"chi":[0,0,1]},"tilt":{"m0":1,"m1":0,"m2":2})");
    EXPECT_EQ(dstab_run({"charge", "coeffs"}, sky).out, "{\"c1\":\"0\",\"c0\":\"2\",\"cone\":[\"-2\"]}\n");
    EXPECT_EQ(dstab_run({"charge", "z"}, sky).out, "{\"re\":\"-2\",\"im\":\"0\"}\n");
    EXPECT_EQ(dstab_run({"charge", "phase"}, sky).out,
              "{\"re\":\"-2\",\"im\":\"0\",\"kind\":\"1\",\"cot\":null,\"lo\":\"1\",\"hi\":\"1\"}\n");
    // flags override the document's tilt
    EXPECT_EQ(dstab_run({"charge", "coeffs", "--m2", "5"}, sky).out, "{\"c1\":\"0\",\"c0\":\"5\",\"cone\":[\"-5\"]}\n");
    EXPECT_EQ(dstab_run({"charge", "heart", "--muhat", "0"}, sky).out, "{\"part\":\"FreePart_Fq\"}\n");
    EXPECT_EQ(dstab_run({"charge", "heart", "--torsion"}, sky).out, "{\"part\":\"TorsionPart\"}\n");

    const std::string seq = doc_with(R"("tilt":{"m0":1,"m1":0,"m2":1},"options":{"samples":[[0,0,1],[1,-2,1],[-1,-1,-1]]})");
    auto pass = dstab_run({"charge", "check-seq"}, seq);
    EXPECT_EQ(pass.code, 0);
    EXPECT_EQ(pass.out,
              "{\"pass\":true,\"mmin\":1,\"strict_threshold\":\"0\",\"gate_pass\":true,\"first_violation\":null}\n");
    auto gate = dstab_run({"charge", "check-seq", "--m0", "0"}, seq);
    EXPECT_EQ(gate.code, 1);
    EXPECT_NE(gate.out.find("\"gate_pass\":false"), std::string::npos);

    EXPECT_EQ(dstab_run({"charge", "z"}, doc_with(R"("class":{"chi":[0,0,0]},"tilt":{"m2":1})")).code, 2);
}

TEST(Cli, BatchKeepsOrderAndAggregatesExitCodes) {
    std::string docs = "[";
    for (int k = 0; k < 40; ++k) {
        if (k) docs += ",";
        docs += doc_with(R"("tilt":{"m1":)" + std::to_string(k % 7) + R"(,"m2":1})");
    }
    docs += "]";
    auto r = dstab_run({"bound", "mmin", "--batch"}, docs);
    EXPECT_EQ(r.code, 0);
    auto arr = nlohmann::json::parse(r.out);
    ASSERT_EQ(arr.size(), 40U);
    for (int k = 0; k < 40; ++k) {
        const long long q = k % 7;
        EXPECT_EQ(arr[static_cast<std::size_t>(k)]["mmin"].get<long long>(), q * (q - 1) / 2 + 1);
    }
    auto mixed = dstab_run({"bound", "validate", "--batch"},
                           "[" + p2_doc + R"(,{"bogus":1},{"ambient":{"n":2,"d":1,"muhat_O":0,"muhat_omega":0,"mu_omega":-9}}])");
    EXPECT_EQ(mixed.code, 2);
    auto marr = nlohmann::json::parse(mixed.out);
    EXPECT_EQ(marr[0]["pass"], true);
    EXPECT_TRUE(marr[1].contains("error"));
    EXPECT_EQ(marr[2]["pass"], false);
    EXPECT_EQ(dstab_run({"bound", "validate", "--batch"}, p2_doc).code, 2);
}

TEST(Cli, OutputIsDeterministic) {
    const std::vector<std::vector<std::string>> cmds = {
        {"hn", "factor", "123456789"}, {"selftest"}, {"bound", "pbar", "--muhat", "7/3"}};
    for (const auto& c : cmds) {
        auto a = dstab_run(c, p2_doc), b = dstab_run(c, p2_doc);
        EXPECT_EQ(a.out, b.out);
        EXPECT_EQ(a.code, b.code);
    }
}
