#pragma once

// Exact chain values, evaluated once with an independent fraction-based
// implementation and frozen here.

namespace frozen {

namespace eps_1e10 {
inline constexpr bool feasible = false;
inline constexpr const char* delta = "142570463682136790011432848577/79228162514264337593543950336";
inline constexpr const char* mu1 = "1392289684473238342410735179065960889/23611832414348226068480000000000";
inline constexpr const char* nu1 = "-47860089591292993867014096767971105479750975712887060303970304/3827592097285268485691137971109669697304195012614413405066394805908203125";
inline constexpr const char* mu2 = "10973974368656878950878402980839288479765906245175026653681063578528/3827592097285268485691137971109669697304195012614413405066394805908203125";
inline constexpr const char* nu2 = "-107373297844243600358137346314259724369762732850690229229343665259310165485355095426810202773789493114920228618240000000000/253252858199165195778676264462591245876160045952904967334476695275083304047705219639090350309227450186913924492158297458966354404614489199";
} // namespace eps_1e10

namespace eps_2m200 {
inline constexpr bool feasible = true;
inline constexpr const char* delta = "1/1048576";
inline constexpr const char* mu1 = "1532495540865888858358347027150309183618739122183602177/49039857307708443467467104868809893875799651909875269632";
inline constexpr const char* nu1 = "1606936511763449409653103733994135452213019375043670651699201/2582235102346327654640083733502421723458475573063875501032700475284157484728837928301239115147610744584461713002410803200";
inline constexpr const char* mu2 = "3213865361056501998048570190844153577043702071490010048102401/78803561472971425007326774093701834822341173494380966218038954934208907615015805917396213230823081804945730987622400";
inline constexpr const char* nu2 = "5089396678462737865056520826884910165609534121512104068141223852186568418715632107849570411993247332563761558978560/7156052001828724014874063574470251204171262520845645191472914199598280376450193514165491610747035860650909679028818075257581509097711554944127565004267286764475964259390385903";
inline constexpr const char* c = "1642761744062040295889112182573638862751291601225875928803130457111661182571660553758559975887129590242827015747875431652558559331441028623507416683827020569319170100234036850454245825606424474712401549680085091945949767508784979116032/7156052001828724014874063574470251204171262520845645191472914199598280376450193514165491610747035860650909679028818075257581509097711554944127565004267286764475964259390385903";
} // namespace eps_2m200

} // namespace frozen
