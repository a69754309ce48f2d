//! The example queries and the sample database they run on.

use gvsql::Database;

pub const SAMPLE: &str = include_str!("../../data/sample.sql");

pub const FRIENDS_OF_LAWYERS: &str = "SELECT PS.EndVertex.lstName FROM Users U, SocialNetwork.Paths PS \
    WHERE U.Job = 'Lawyer' AND PS.StartVertex.Id = U.uId AND PS.Length = 2 \
    AND PS.Edges[0..*].StartDate > '1/1/2000'";

pub const PROTEIN_REACH: &str = "SELECT PS.PathString FROM Proteins Pr1, Proteins Pr2, BioNetwork.Paths PS \
    WHERE Pr1.Name = 'Protein X' AND Pr2.Name = 'Protein Y' AND PS.StartVertex.Id = Pr1.Id \
    AND PS.EndVertex.Id = Pr2.Id AND PS.Edges[0..*].Type IN ('covalent', 'stable') LIMIT 1";

pub const TRIANGLES: &str = "SELECT Count(P) FROM MLGraph.Paths P Where P.Length = 3 \
    AND P.Edges[0].Label = 'A' AND P.Edges[1].Label = 'B' AND P.Edges[2].Label = 'C' \
    AND P.Edges[2].EndVertex = P.Edges[0].StartVertex";

pub const TOP2_ROUTES: &str = "SELECT TOP 2 PS FROM RoadNetwork.Paths PS HINT(SHORTESTPATH(Distance)), \
    RoadNetwork.Vertexes Src, RoadNetwork.Vertexes Dest \
    WHERE PS.StartVertex.Id = Src.Id AND PS.EndVertex.Id = Dest.Id \
    AND Src.Address = \"Address 1\" AND Dest.Address = \"Address 2\"";

pub const SMITHS: &str = "SELECT VS.birthdate, VS.fanOut FROM SocialNetwork.Vertexes VS WHERE VS.lstName = 'Smith'";

pub const PATIENT_ROUTES: &str = "SELECT Patient.Name, Patient.EMail, PS.PathString \
    FROM Patient, Locations Dest, \
    TEMPGRAPH( VERTEXES (ID = LocId) FROM Locations \
    EDGES(ID = rId, FROM = rStart, TO = rEnd, Distance = rDist) FROM Roads \
    WHERE Roads.Type NOT IN (SELECT Type FROM UAvoidance WHERE UAvoidance.UserId = Patient.Id)).Paths PS \
    HINT(SHORTESTPATH(Distance)) \
    WHERE PS.StartVertex.Id = Patient.LocationId AND PS.EndVertex.Id = Dest.Id \
    AND Dest.Address = \"Address 1\" AND Patient.City = \"San Francisco\"";

pub const FAST_ROADS: &str = "SELECT PS.PathString FROM RoadNetwork.Paths PS HINT(SHORTESTPATH(Distance)) \
    WHERE PS.Edges.SpeedLimit > 30 AND PS.StartVertex.Id = 1 AND PS.EndVertex.Id = 10";

pub fn sample() -> Database {
    let mut db = Database::new();
    db.execute_script(SAMPLE)
        .unwrap_or_else(|(line, e)| panic!("sample line {line}: {e}"));
    db
}
