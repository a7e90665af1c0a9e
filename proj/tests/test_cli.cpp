#include "tsw/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "tsw/output.hpp"

using namespace tsw;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun tsw_run(std::vector<std::string> args) {
    args.insert(args.begin(), "tsw");
    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("tsw_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write(const std::string &name, const std::string &text) {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p;
    }
    fs::path bundled(const std::string &name) { return fs::path(TSW_SOURCE_DIR) / "configs" / name; }

    fs::path dir_;
};

} // namespace

TEST(FormatTrace, HeaderAndSingleRow) {
    TraceSample s;
    s.total_contraction = 0.0123;
    s.ratio = TransmissionRatio{1e-4, 5e-3, 5e-3};
    const std::string text = format_trace(std::vector<TraceSample>{s});
    const auto l = lines(text);
    ASSERT_EQ(l.size(), 2u);
    EXPECT_EQ(l[0], kTraceHeader);
    EXPECT_EQ(l[0],
              "t_s,theta_eff_rad,phi_eff_rad,theta1_rad,theta2_rad,dX_total_mm,x_dot_mm_s,f_total_N,"
              "tr_twist_mm_per_rad,tr_winch_mm_per_rad");
    EXPECT_EQ(l[1], "0,0,0,0,0,12.3,0,,0.1,5");
    EXPECT_THROW(format_trace(std::vector<TraceSample>{}), ValidationError);
}

TEST(FormatTrace, NineSignificantDigits) {
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
    EXPECT_EQ(format_number(123456789012.0), "1.23456789e+11");
    EXPECT_EQ(format_number(-0.0), "0");
}

TEST_F(CliTest, EmitTraceReportsPath) {
    TraceSample s;
    EXPECT_THROW(emit_trace(std::vector<TraceSample>{s}, OutputFormat::Csv, (dir_ / "missing" / "x.csv").string()),
                 IoError);
}

TEST_F(CliTest, SimulateBundledExample) {
    const fs::path out = dir_ / "trace.csv";
    const CliRun r = tsw_run({"simulate", bundled("winch_then_twist.cfg").string(), "-o", out.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto l = lines(slurp(out));
    ASSERT_EQ(l.size(), 17502u);
    EXPECT_EQ(l[0], kTraceHeader);

    // At the end of the twist phase the stroke exceeds what winding alone gives.
    const auto row = split(l[1 + 9000]);
    ASSERT_EQ(row.size(), 10u);
    const double phi = std::stod(row[2]);
    const double dx_mm = std::stod(row[5]);
    EXPECT_NEAR(phi, 18.0, 1e-9);
    EXPECT_GT(dx_mm, 5.0 * phi);
    EXPECT_NE(r.out.find("status: ok"), std::string::npos);

    const auto last = split(l.back());
    EXPECT_NEAR(std::stod(last[5]), 0.0, 1e-6);
}

TEST_F(CliTest, SimulateIsDeterministic) {
    const fs::path a = dir_ / "a.csv", b = dir_ / "b.csv";
    ASSERT_EQ(tsw_run({"simulate", bundled("velocity_control.cfg").string(), "-o", a.string()}).code, kExitOk);
    ASSERT_EQ(tsw_run({"simulate", bundled("velocity_control.cfg").string(), "-o", b.string()}).code, kExitOk);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_GT(slurp(a).size(), 1000u);
}

TEST_F(CliTest, SimulateToStdout) {
    const fs::path cfg = write("hold.cfg", "[sim]\ndt = 1 ms\n[phase]\nkind = hold\nduration = 1 ms\n");
    const CliRun r = tsw_run({"simulate", cfg.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(lines(r.out).size(), 3u);
    EXPECT_NE(r.err.find("samples: 2"), std::string::npos);
}

TEST_F(CliTest, OvertwistExitsWithDomainCodeAndPartialTrace) {
    const fs::path cfg = write("over.cfg", "[phase]\nkind = rates\nduration = 10 s\ntwist_rate = 100 rad/s\n");
    const fs::path out = dir_ / "over.csv";
    const CliRun r = tsw_run({"simulate", cfg.string(), "-o", out.string()});
    EXPECT_EQ(r.code, kExitDomain);
    EXPECT_NE(r.err.find("overtwist"), std::string::npos);
    EXPECT_GT(lines(slurp(out)).size(), 1000u);
}

TEST_F(CliTest, ExitCodeTaxonomy) {
    EXPECT_EQ(tsw_run({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(tsw_run({}).code, kExitUsage);
    EXPECT_NE(tsw_run({"frobnicate"}).err.find("simulate"), std::string::npos);
    EXPECT_EQ(tsw_run({"--help"}).code, kExitOk);
    EXPECT_EQ(tsw_run({"simulate", (dir_ / "nope.cfg").string()}).code, kExitIo);
    EXPECT_EQ(tsw_run({"simulate", write("p.cfg", "[string]\nlength = 5\n").string()}).code, kExitParse);
    EXPECT_EQ(tsw_run({"simulate", write("v.cfg", "[winch]\nfriction = 1.5\n").string()}).code, kExitValidation);
    EXPECT_EQ(tsw_run({"simulate", write("e.cfg", "[sim]\ndt = 1 ms\n").string()}).code, kExitValidation);
    EXPECT_EQ(tsw_run({"force", write("r.cfg", "[string]\nstiffness = rigid\n").string()}).code, kExitDomain);
    const fs::path ok = write("ok.cfg", "[phase]\nkind = hold\nduration = 1 ms\n");
    EXPECT_EQ(tsw_run({"simulate", ok.string(), "-o", (dir_ / "no" / "such" / "dir.csv").string()}).code, kExitIo);
}

TEST_F(CliTest, SweepVelocityTable) {
    const fs::path out = dir_ / "sweep.csv";
    const CliRun r = tsw_run({"sweep", bundled("velocity_sweep.cfg").string(), "-o", out.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto l = lines(slurp(out));
    ASSERT_EQ(l.size(), 21u);
    EXPECT_EQ(l[0], "channel,rate_rad_s,x_dot_mm_s,status");
    EXPECT_EQ(l[1].rfind("twist,0.4,", 0), 0u);
    const auto winch_last = split(l[20]);
    EXPECT_EQ(winch_last[0], "winch");
    // Winding also lengthens the twisted zone, so the winch gain exceeds r_w.
    EXPECT_GT(std::stod(winch_last[2]), 5.0 * 2.01);
}

TEST_F(CliTest, SweepForceTable) {
    const fs::path out = dir_ / "force_sweep.csv";
    const CliRun r = tsw_run({"sweep", bundled("force_grid.cfg").string(), "-o", out.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto l = lines(slurp(out));
    ASSERT_EQ(l.size(), 63u);
    EXPECT_EQ(l[0], "channel,theta_eff_rad,tau_w_Nm,force_N");
    EXPECT_NE(r.out.find("twist overtakes winch"), std::string::npos);
}

TEST_F(CliTest, ForceGrid) {
    const fs::path out = dir_ / "force.csv";
    const CliRun r = tsw_run({"force", bundled("force_grid.cfg").string(), "-o", out.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto l = lines(slurp(out));
    ASSERT_EQ(l.size(), 1u + 31 * 5);
    EXPECT_EQ(l[0], "theta_eff_rad,tau_w_Nm,status,f_twist_N,f_winch_N,f_total_N,alpha_rad,gamma_rad");
    EXPECT_NE(r.out.find("twist force exceeds winch force"), std::string::npos);
}

TEST_F(CliTest, RatioMap) {
    const fs::path out = dir_ / "ratio.csv";
    const CliRun r = tsw_run({"ratio", bundled("ratio_map.cfg").string(), "-o", out.string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto l = lines(slurp(out));
    ASSERT_EQ(l.size(), 1u + 26 * 7);
    for (std::size_t i = 1; i < l.size(); ++i) {
        const auto row = split(l[i]);
        if (row[2] == "ok") {
            EXPECT_NEAR(std::stod(row[5]), 5.0, 1e-5);
        } else {
            EXPECT_EQ(row[2], "domain");
            EXPECT_EQ(row[3], "");
        }
    }
}

TEST_F(CliTest, TsvFormatAndSummaryFile) {
    const fs::path cfg = write("tsv.cfg", "[phase]\nkind = hold\nduration = 2 ms\n[output]\nformat = tsv\n");
    const fs::path out = dir_ / "t.tsv", summary = dir_ / "s.txt";
    const CliRun r = tsw_run({"simulate", cfg.string(), "-o", out.string(), "--summary", summary.string()});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_EQ(lines(slurp(out))[0].find(','), std::string::npos);
    EXPECT_NE(slurp(summary).find("status: ok"), std::string::npos);
}
