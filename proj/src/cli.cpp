#include "netscope/cli.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "netscope/config_planner.hpp"
#include "netscope/errors.hpp"
#include "netscope/report.hpp"
#include "netscope/trace_synth.hpp"

#ifdef __linux__
#include <arpa/inet.h>
#include <net/if.h>
#include <sys/ioctl.h>
#include <sys/socket.h>
#include <unistd.h>

#include <bit>
#include <cstring>
#endif

namespace netscope::cli {

namespace {

int64_t wall_clock_us() {
    return std::chrono::duration_cast<std::chrono::microseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

struct Options {
    std::string interface;
    std::string trace;
    std::string synth_spec;
    std::string mode = "both";
    std::vector<int> accepted_ttls = {1, 64, 128};
    double timeout_s = 300.0;
    std::size_t threshold = 10;
    std::string cluster = "max-size";
    uint64_t max_net_size = 256;
    int prefix_len = -1;
    std::string out_path = "scan_plan.json";
    std::string report_path;
    std::string hopcounts_path;
    bool deterministic = false;
};

CaptureConfig capture_config_from(const Options& opt) {
    CaptureConfig config;
    if (!opt.interface.empty())
        config.source = LiveInterface{opt.interface};
    else
        config.source = TraceFile{opt.trace};
    if (opt.mode == "arp")
        config.mode = CaptureMode::ArpOnly;
    else if (opt.mode == "ip")
        config.mode = CaptureMode::IpOnly;
    else if (opt.mode == "both")
        config.mode = CaptureMode::Both;
    else
        throw InvalidArgumentsError("--mode must be one of arp|ip|both");
    config.accepted_ttls.clear();
    for (int ttl : opt.accepted_ttls) {
        if (ttl < 0 || ttl > 255)
            throw InvalidArgumentsError("--ttl-accept values must be within 0..255");
        config.accepted_ttls.insert(uint8_t(ttl));
    }
    if (config.mode != CaptureMode::ArpOnly && config.accepted_ttls.empty())
        throw InvalidArgumentsError("--ttl-accept must not be empty unless --mode arp");
    if (opt.timeout_s <= 0) throw InvalidArgumentsError("--timeout must be positive");
    if (opt.threshold == 0) throw InvalidArgumentsError("--threshold must be positive");
    config.duration_timeout_s = opt.timeout_s;
    config.host_threshold = opt.threshold;
    return config;
}

ClusteringPolicy clustering_policy_from(const Options& opt) {
    if (opt.cluster == "max-size") {
        if (opt.max_net_size < 2) throw InvalidArgumentsError("--max-net-size must be >= 2");
        return MaxNetworkSize{opt.max_net_size};
    }
    if (opt.cluster == "prefix") {
        if (opt.prefix_len < 0)
            throw InvalidArgumentsError("--cluster prefix requires --prefix-len");
        if (opt.prefix_len > 32) throw InvalidArgumentsError("--prefix-len must be within 0..32");
        return PresumedPrefix{unsigned(opt.prefix_len)};
    }
    if (opt.cluster == "single") return SingleNetwork{};
    throw InvalidArgumentsError("--cluster must be one of max-size|prefix|single");
}

#ifdef __linux__

// Current IPv4 configuration of a live interface; unconfigured interfaces
// simply yield an empty state.
InterfaceState read_interface_state(const std::string& name) {
    InterfaceState state;
    int fd = ::socket(AF_INET, SOCK_DGRAM, 0);
    if (fd < 0) return state;

    ifreq req{};
    std::strncpy(req.ifr_name, name.c_str(), IFNAMSIZ - 1);
    if (::ioctl(fd, SIOCGIFADDR, &req) == 0) {
        auto* addr = reinterpret_cast<sockaddr_in*>(&req.ifr_addr);
        state.ip = Ipv4Address(ntohl(addr->sin_addr.s_addr));
        if (::ioctl(fd, SIOCGIFNETMASK, &req) == 0) {
            auto* mask = reinterpret_cast<sockaddr_in*>(&req.ifr_netmask);
            state.prefix_length = unsigned(std::popcount(ntohl(mask->sin_addr.s_addr)));
        } else {
            state.prefix_length = 24;
        }
    }
    ::close(fd);

    // default route for this interface, if any
    std::ifstream routes("/proc/net/route");
    std::string line;
    std::getline(routes, line);  // header
    while (std::getline(routes, line)) {
        std::istringstream fields(line);
        std::string iface, destination, gateway;
        unsigned flags = 0;
        fields >> iface >> destination >> gateway >> std::hex >> flags;
        if (iface != name || destination != "00000000" || !(flags & 0x2 /* RTF_GATEWAY */))
            continue;
        uint32_t raw = uint32_t(std::stoul(gateway, nullptr, 16));  // little-endian hex
        state.gateway = Ipv4Address(ntohl(raw));
        break;
    }
    return state;
}

#else

InterfaceState read_interface_state(const std::string&) { return {}; }

#endif

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open()) throw SourceOpenError("cannot write '" + path + "'");
    out << content;
}

std::string synth_output_path(const Options& opt) {
    if (!opt.trace.empty()) return opt.trace;
    std::filesystem::path spec(opt.synth_spec);
    return spec.stem().string() + ".pcap";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"passive network scope discovery: observe traffic, determine ranges, "
                 "emit a scan plan"};
    app.add_option("--interface", opt.interface, "capture live on this network interface");
    app.add_option("--trace", opt.trace,
                   "read a pcap savefile (with --synth: where to write the generated capture)");
    app.add_option("--synth", opt.synth_spec,
                   "generate a capture from a scenario spec (JSON) and analyze it");
    app.add_option("--mode", opt.mode, "capture filter: arp|ip|both (default both)");
    app.add_option("--ttl-accept", opt.accepted_ttls,
                   "accepted IP TTL values (default 1,64,128)")
        ->delimiter(',');
    app.add_option("--timeout", opt.timeout_s, "passive phase duration limit in seconds");
    app.add_option("--threshold", opt.threshold, "stop after this many detected hosts");
    app.add_option("--cluster", opt.cluster, "clustering variant: max-size|prefix|single");
    app.add_option("--max-net-size", opt.max_net_size,
                   "maximum network size for --cluster max-size (default 256)");
    app.add_option("--prefix-len", opt.prefix_len, "prefix length for --cluster prefix");
    app.add_option("--out", opt.out_path, "scan plan output path (default scan_plan.json)");
    app.add_option("--report", opt.report_path, "report output path (default: stdout)");
    app.add_option("--hopcounts", opt.hopcounts_path,
                   "hopcount table (JSON) for internal-gateway inference");
    app.add_flag("--deterministic", opt.deterministic,
                 "normalize timestamps for reproducible output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "netscope: InvalidArguments: " << e.what() << "\n";
        return int(ErrorCode::InvalidArguments);
    }

    try {
        const bool live = !opt.interface.empty();
        const bool trace = !opt.trace.empty();
        const bool synth = !opt.synth_spec.empty();
        if (live + (trace || synth) != 1 || (!live && !trace && !synth))
            throw InvalidArgumentsError(
                "exactly one capture source required: --interface, --trace or --synth");

        if (synth) {
            auto synthesized = synthesize(load_scenario_spec(opt.synth_spec));
            std::string capture_path = synth_output_path(opt);
            write_text_file(capture_path, std::string(synthesized.capture.begin(),
                                                      synthesized.capture.end()));
            write_text_file(capture_path + ".manifest.json",
                            manifest_to_json(synthesized.manifest));
            out << "synthesized " << synthesized.manifest.frame_count << " frames -> "
                << capture_path << "\n";
            opt.trace = capture_path;
        }

        CaptureConfig config = capture_config_from(opt);
        ClusteringPolicy policy = clustering_policy_from(opt);

        auto passive_started = std::chrono::steady_clock::now();
        ObservationSet observations = run_passive_phase(config);
        auto analysis_started = std::chrono::steady_clock::now();

        InterfaceState iface =
            live ? read_interface_state(opt.interface) : InterfaceState{};

        ScanPlan plan = build_scan_plan(observations, policy, iface,
                                        opt.deterministic ? 0 : wall_clock_us());
        auto analysis_ended = std::chrono::steady_clock::now();

        RunReport report;
        report.scan_plan = plan;
        report.capture_description =
            live ? "live capture on '" + opt.interface + "'" : "trace replay of '" + opt.trace + "'";
        if (!opt.deterministic) {
            report.timings.passive_s =
                std::chrono::duration<double>(analysis_started - passive_started).count();
            report.timings.analysis_s =
                std::chrono::duration<double>(analysis_ended - analysis_started).count();
        }

        if (plan.reconfiguration &&
            (plan.reconfiguration->gateway_provenance == GatewayProvenance::RangeFirstAddress ||
             plan.reconfiguration->gateway_provenance == GatewayProvenance::RangeLastAddress)) {
            report.warnings.push_back(
                "gateway is a positional fallback (no ARP evidence was available)");
        }
        if (observations.termination_reason == TerminationReason::ThresholdReached)
            report.warnings.push_back(
                "host threshold reached; ranges may underestimate the true scope");

        if (!opt.hopcounts_path.empty()) {
            report.hopcounts_loaded = true;
            report.internal_gateway_hint =
                infer_internal_gateway(load_hopcount_table(opt.hopcounts_path));
        }

        write_text_file(opt.out_path, plan_to_json(plan));
        std::string rendered = render_report(report);
        if (opt.report_path.empty())
            out << rendered;
        else
            write_text_file(opt.report_path, rendered);
        out << "scan plan written to " << opt.out_path << "\n";
        return 0;
    } catch (const Error& e) {
        err << "netscope: " << e.what() << "\n";
        return int(e.code());
    } catch (const std::exception& e) {
        err << "netscope: internal error: " << e.what() << "\n";
        return 10;
    }
}

}  // namespace netscope::cli
