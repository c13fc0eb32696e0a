// Drives the installed binary end to end: golden fragments, exit codes, and
// byte-stability of reports.
#include <array>
#include <cstdio>
#include <iostream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WEXITSTATUS(status);
    return r;
}

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        std::cerr << "FAIL: " << what << "\n";
        ++failures;
    }
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: test_cli <arithtop-binary> <data-dir>\n";
        return 2;
    }
    const std::string bin = argv[1];
    const std::string data = argv[2];

    {
        const RunResult r = run(bin + " link " + data + "/hopf.json");
        expect(r.exit_code == 0, "hopf exit code");
        expect(contains(r.out, "2 components"), "hopf component count");
        expect(contains(r.out, "0 1") && contains(r.out, "1 0"), "hopf linking matrix");
    }
    {
        const RunResult r = run(bin + " link " + data + "/trefoil.pd");
        expect(r.exit_code == 0, "trefoil exit code");
        expect(contains(r.out, "t^2 - t + 1"), "trefoil alexander polynomial");
        expect(contains(r.out, "1 3 4 3 1 0"), "trefoil branched cover orders");
    }
    {
        const RunResult r =
            run(bin + " link " + data + "/whitehead.json --l 2 --d 4 --assume-qhs");
        expect(r.exit_code == 0, "whitehead exit code");
        expect(contains(r.out, "e_3 = 1"), "whitehead e_3");
        expect(contains(r.out, "e_4 = 0"), "whitehead e_4");
    }
    {
        const RunResult r = run(bin + " primes 13 61 937 --l 2 --d 3 --verify");
        expect(r.exit_code == 0, "borromean primes exit code");
        expect(contains(r.out, "Z/4 + Z/4"), "borromean primes prediction");
        expect(contains(r.out, "PASS"), "borromean primes oracle PASS");
    }
    {
        const RunResult r = run(bin + " primes 5 13 --l 2 --d 2 --verify");
        expect(r.exit_code == 0, "5,13 exit code");
        expect(contains(r.out, "e_2 = 0"), "5,13 e_2");
        expect(contains(r.out, "PASS"), "5,13 oracle PASS");
    }
    {
        // 7, 11 are 3 mod 4: outside the l = 2 pipeline's assumptions
        const RunResult r = run(bin + " primes 7 11 --l 2");
        expect(r.exit_code == 2, "primes 3 mod 4 rejected at l = 2");
        const RunResult r4 = run(bin + " primes 5 13 --l 4");
        expect(r4.exit_code == 2, "composite l rejected");
    }
    {
        const RunResult r = run(bin + " classgroup --disc 743041");
        expect(r.exit_code == 0, "classgroup exit code");
        expect(contains(r.out, "\"order\": 16"), "classgroup order 16");
    }
    {
        const RunResult r = run(bin + " zeta-ranks --chain-n 3 --degree 3");
        expect(r.exit_code == 0, "zeta exit code");
        expect(contains(r.out, "a_1 = 3") && contains(r.out, "a_2 = 1") && contains(r.out, "a_3 = 2"),
               "zeta ranks for n = 3");
        const RunResult rc = run(bin + " zeta-ranks --coeffs 1,-2,1 --degree 4");
        expect(rc.exit_code == 0 && contains(rc.out, "a_1 = 2") && contains(rc.out, "a_4 = 0"),
               "zeta ranks from raw coefficients");
    }
    {
        // l = 3 prediction path (pairs only; no oracle at l > 2)
        const RunResult r = run(bin + " primes 7 13 --l 3 --d 2");
        expect(r.exit_code == 0, "l = 3 prediction exit code");
        expect(contains(r.out, "e_2"), "l = 3 prediction output");
        const RunResult rv = run(bin + " primes 7 13 --l 3 --d 2 --verify");
        expect(rv.exit_code == 2, "l = 3 oracle comparison rejected");
    }
    {
        // byte-stability of the JSON report
        const std::string cmd = bin + " --json primes 13 61 937 --d 3";
        const RunResult a = run(cmd);
        const RunResult b = run(cmd);
        expect(a.exit_code == 0 && a.out == b.out, "byte-stable JSON report");
    }
    {
        const RunResult r = run(bin + " primes --file " + data + "/borromean_primes.json --d 3");
        expect(r.exit_code == 0, "prime-set file exit code");
        expect(contains(r.out, "Z/4 + Z/4"), "prime-set file prediction");
    }
    {
        const RunResult r = run(bin + " covering " + data + "/covering_z4.json");
        expect(r.exit_code == 0, "covering exit code");
        expect(contains(r.out, "\"e\": 2") && contains(r.out, "\"f\": 2"), "covering e, f");
        expect(contains(r.out, "\"kernel_order\": 2"), "transfer kernel order");
        expect(contains(r.out, "\"divisible_by_index\": true"), "transfer divisibility");
    }
    {
        // longitude-only JSON input
        const std::string tmp = "/tmp/arithtop_cli_borromean_longitudes.json";
        FILE* f = fopen(tmp.c_str(), "w");
        fputs(R"({"n": 3, "longitudes": ["x2 x3 x2^-1 x3^-1",)", f);
        fputs(R"( "x3 x1 x3^-1 x1^-1", "x1 x2 x1^-1 x2^-1"]})", f);
        fclose(f);
        const RunResult r = run(bin + " link " + tmp + " --degree 3");
        expect(r.exit_code == 0, "longitude JSON exit code");
        expect(contains(r.out, "3 components"), "longitude JSON components");
        expect(contains(r.out, "symmetry check: ok"), "longitude JSON symmetry");
        remove(tmp.c_str());
    }
    {
        const RunResult r = run(bin + " selftest --data " + data);
        expect(r.exit_code == 0, "selftest exit code");
        expect(!contains(r.out, "FAIL"), "selftest all PASS");
    }

    if (failures == 0) {
        std::cout << "test_cli: all checks passed\n";
        return 0;
    }
    std::cerr << "test_cli: " << failures << " failures\n";
    return 1;
}
