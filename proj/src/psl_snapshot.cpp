// Embedded snapshot of public suffix rules (ICANN section subset), in the
// list's native syntax: plain rules, "*." wildcard rules, "!" exceptions.
// Single-label TLDs are intentionally absent: a host that matches no rule
// resolves through the default "*" rule, i.e. registered domain = last two
// labels, which is the correct answer for every plain TLD. Only rules that
// change that default need to be listed here.

#include <cstddef>

namespace civet::psl {

extern const char* const kRules[];
extern const size_t kRuleCount;

const char* const kRules[] = {
    // United Kingdom
    "ac.uk", "co.uk", "gov.uk", "ltd.uk", "me.uk", "net.uk", "nhs.uk",
    "org.uk", "plc.uk", "police.uk", "sch.uk",
    // Australia
    "asn.au", "com.au", "edu.au", "gov.au", "id.au", "net.au", "org.au",
    // Japan
    "ac.jp", "ad.jp", "co.jp", "ed.jp", "go.jp", "gr.jp", "lg.jp", "ne.jp",
    "or.jp",
    "*.kawasaki.jp", "*.kitakyushu.jp", "*.kobe.jp", "*.nagoya.jp",
    "*.sapporo.jp", "*.sendai.jp", "*.yokohama.jp",
    "!city.kawasaki.jp", "!city.kitakyushu.jp", "!city.kobe.jp",
    "!city.nagoya.jp", "!city.sapporo.jp", "!city.sendai.jp",
    "!city.yokohama.jp",
    // Brazil
    "adv.br", "art.br", "com.br", "edu.br", "gov.br", "mil.br", "net.br",
    "org.br",
    // China
    "ac.cn", "com.cn", "edu.cn", "gov.cn", "mil.cn", "net.cn", "org.cn",
    // India
    "ac.in", "co.in", "edu.in", "firm.in", "gen.in", "gov.in", "ind.in",
    "mil.in", "net.in", "nic.in", "org.in", "res.in",
    // New Zealand
    "ac.nz", "co.nz", "geek.nz", "gen.nz", "govt.nz", "iwi.nz", "maori.nz",
    "net.nz", "org.nz", "school.nz",
    // South Africa
    "ac.za", "co.za", "edu.za", "gov.za", "law.za", "mil.za", "net.za",
    "org.za", "school.za", "web.za",
    // Mexico
    "com.mx", "edu.mx", "gob.mx", "net.mx", "org.mx",
    // Argentina
    "com.ar", "edu.ar", "gob.ar", "gov.ar", "int.ar", "mil.ar", "net.ar",
    "org.ar",
    // South Korea
    "ac.kr", "co.kr", "es.kr", "go.kr", "hs.kr", "kg.kr", "mil.kr", "ms.kr",
    "ne.kr", "or.kr", "pe.kr", "re.kr", "sc.kr",
    // Taiwan
    "com.tw", "edu.tw", "gov.tw", "idv.tw", "mil.tw", "net.tw", "org.tw",
    // Hong Kong
    "com.hk", "edu.hk", "gov.hk", "idv.hk", "net.hk", "org.hk",
    // Singapore
    "com.sg", "edu.sg", "gov.sg", "net.sg", "org.sg",
    // Turkey
    "av.tr", "bel.tr", "biz.tr", "com.tr", "dr.tr", "edu.tr", "gen.tr",
    "gov.tr", "info.tr", "k12.tr", "net.tr", "org.tr", "web.tr",
    // Russia
    "ac.ru", "edu.ru", "gov.ru", "int.ru", "mil.ru",
    // Ukraine
    "com.ua", "edu.ua", "gov.ua", "in.ua", "kharkov.ua", "kiev.ua",
    "lviv.ua", "net.ua", "odessa.ua", "org.ua",
    // Poland
    "biz.pl", "com.pl", "edu.pl", "gov.pl", "info.pl", "net.pl", "org.pl",
    "waw.pl",
    // France
    "asso.fr", "com.fr", "gouv.fr", "nom.fr", "prd.fr", "tm.fr",
    // Italy
    "edu.it", "gov.it",
    // Spain
    "com.es", "edu.es", "gob.es", "nom.es", "org.es",
    // Portugal
    "com.pt", "edu.pt", "gov.pt", "int.pt", "net.pt", "org.pt", "publ.pt",
    // Belgium
    "ac.be",
    // Canada
    "ab.ca", "bc.ca", "gc.ca", "mb.ca", "nb.ca", "nf.ca", "nl.ca", "ns.ca",
    "nt.ca", "nu.ca", "on.ca", "pe.ca", "qc.ca", "sk.ca", "yk.ca",
    // United States
    "ca.us", "dni.us", "fed.us", "fl.us", "il.us", "isa.us", "ma.us",
    "mi.us", "nsn.us", "ny.us", "oh.us", "pa.us", "tx.us", "wa.us",
    // Israel
    "ac.il", "co.il", "gov.il", "idf.il", "k12.il", "muni.il", "net.il",
    "org.il",
    // Ireland
    "gov.ie",
    // Greece
    "com.gr", "edu.gr", "gov.gr", "net.gr", "org.gr",
    // Colombia
    "com.co", "edu.co", "gov.co", "mil.co", "net.co", "nom.co", "org.co",
    // Indonesia
    "ac.id", "biz.id", "co.id", "desa.id", "go.id", "mil.id", "my.id",
    "net.id", "or.id", "sch.id", "web.id",
    // Thailand
    "ac.th", "co.th", "go.th", "in.th", "mi.th", "net.th", "or.th",
    // Malaysia
    "com.my", "edu.my", "gov.my", "mil.my", "name.my", "net.my", "org.my",
    // Philippines
    "com.ph", "edu.ph", "gov.ph", "i.ph", "mil.ph", "net.ph", "ngo.ph",
    "org.ph",
    // Vietnam
    "ac.vn", "biz.vn", "com.vn", "edu.vn", "gov.vn", "health.vn", "info.vn",
    "int.vn", "name.vn", "net.vn", "org.vn", "pro.vn",
    // Saudi Arabia
    "com.sa", "edu.sa", "gov.sa", "med.sa", "net.sa", "org.sa", "pub.sa",
    "sch.sa",
    // United Arab Emirates
    "ac.ae", "co.ae", "gov.ae", "mil.ae", "net.ae", "org.ae", "sch.ae",
    // Egypt
    "com.eg", "edu.eg", "eun.eg", "gov.eg", "mil.eg", "name.eg", "net.eg",
    "org.eg", "sci.eg",
    // Nigeria
    "com.ng", "edu.ng", "gov.ng", "i.ng", "mil.ng", "mobi.ng", "name.ng",
    "net.ng", "org.ng", "sch.ng",
    // Kenya
    "ac.ke", "co.ke", "go.ke", "info.ke", "me.ke", "mobi.ke", "ne.ke",
    "or.ke", "sc.ke",
    // Sweden
    "com.se", "org.se", "pp.se", "tm.se",
    // Norway
    "dep.no", "herad.no", "kommune.no", "mil.no", "stat.no",
    // Finland
    "aland.fi",
    // Chile
    "gob.cl", "gov.cl", "mil.cl",
    // Peru
    "com.pe", "edu.pe", "gob.pe", "mil.pe", "net.pe", "nom.pe", "org.pe",
    // Venezuela
    "co.ve", "com.ve", "edu.ve", "gob.ve", "mil.ve", "net.ve", "org.ve",
    // Uruguay
    "com.uy", "edu.uy", "gub.uy", "mil.uy", "net.uy", "org.uy",
    // Ecuador
    "com.ec", "edu.ec", "fin.ec", "gob.ec", "gov.ec", "info.ec", "k12.ec",
    "med.ec", "mil.ec", "net.ec", "org.ec", "pro.ec",
    // Bolivia
    "com.bo", "edu.bo", "gob.bo", "int.bo", "mil.bo", "net.bo", "org.bo",
    "tv.bo",
    // Paraguay
    "com.py", "coop.py", "edu.py", "gov.py", "mil.py", "net.py", "org.py",
    // Costa Rica
    "ac.cr", "co.cr", "ed.cr", "fi.cr", "go.cr", "or.cr", "sa.cr",
    // Panama
    "ac.pa", "com.pa", "edu.pa", "gob.pa", "net.pa", "org.pa", "sld.pa",
    // Dominican Republic
    "art.do", "com.do", "edu.do", "gob.do", "gov.do", "mil.do", "net.do",
    "org.do", "sld.do", "web.do",
    // Guatemala
    "com.gt", "edu.gt", "gob.gt", "ind.gt", "mil.gt", "net.gt", "org.gt",
    // Honduras
    "com.hn", "edu.hn", "gob.hn", "mil.hn", "net.hn", "org.hn",
    // Nicaragua
    "biz.ni", "com.ni", "edu.ni", "gob.ni", "mil.ni", "net.ni", "org.ni",
    // El Salvador
    "com.sv", "edu.sv", "gob.sv", "org.sv", "red.sv",
    // Cuba
    "com.cu", "edu.cu", "gov.cu", "inf.cu", "net.cu", "org.cu",
    // Iceland
    "com.is", "edu.is", "gov.is", "int.is", "net.is", "org.is",
    // Romania
    "com.ro", "firm.ro", "info.ro", "nom.ro", "org.ro", "www.ro",
    // Hungary
    "co.hu", "info.hu", "org.hu", "priv.hu",
    // Croatia
    "com.hr", "from.hr", "iz.hr", "name.hr",
    // Serbia
    "ac.rs", "co.rs", "edu.rs", "gov.rs", "in.rs", "org.rs",
    // Latvia
    "asn.lv", "com.lv", "conf.lv", "edu.lv", "gov.lv", "id.lv", "mil.lv",
    "net.lv", "org.lv",
    // Estonia
    "aip.ee", "com.ee", "edu.ee", "fie.ee", "gov.ee", "lib.ee", "med.ee",
    "org.ee", "pri.ee", "riik.ee",
    // Bangladesh
    "*.bd",
    // Cook Islands
    "*.ck", "!www.ck",
};

const size_t kRuleCount = sizeof(kRules) / sizeof(kRules[0]);

} // namespace civet::psl
