// Wire shapes, mirroring the service's JSON payloads one to one.

export type MemberKind = "attribute" | "method";

export interface BehaviorDto {
  calls: string[];
  reads: string[];
  writes: string[];
}

export interface MemberDto {
  id: string;
  kind: MemberKind;
  name: string;
  keywords: string[];
  behavior?: BehaviorDto;
}

export interface ClassDto {
  id: string;
  name: string;
  keywords: string[];
  position: [number, number];
  members: MemberDto[];
}

export interface DesignDto {
  classes: ClassDto[];
  associations: [string, string][];
  unplaced: MemberDto[];
}

export interface MovePayload {
  kind:
    | "place_member"
    | "remove_member"
    | "connect"
    | "disconnect"
    | "create_class"
    | "delete_class";
  member_id?: string;
  class_id?: string;
  other_class_id?: string;
  name?: string;
  keywords?: string[];
}

export interface WarningDto {
  class_id: string;
  code: string;
  message: string;
}

export interface ReportDto {
  accepted: boolean;
  composite: number;
  avg_cbo: number;
  design_cohesion: number;
  pattern_score: number;
  coupling_term: number;
  per_class_cbo: Record<string, number>;
  per_class_cohesion: Record<string, number>;
  spec_kind: "thresholds" | "pattern";
  spec_index: number | null;
  unplaced_count: number;
  warnings: WarningDto[];
  exact: Record<string, unknown>;
}

export type SoundCue = "place" | "remove" | "connect" | "error" | "level_complete";

export interface FlowNodeDto {
  class_id: string;
  member_id: string;
}

export interface FlowEdgeDto {
  src: FlowNodeDto;
  dst: FlowNodeDto;
  kind: "call" | "read" | "write";
  same_class: boolean;
}

export interface UnresolvedDto {
  src: string;
  kind: string;
  name: string;
}

export interface FlowDeltaDto {
  added_edges: FlowEdgeDto[];
  removed_edges: FlowEdgeDto[];
  added_unresolved: UnresolvedDto[];
  removed_unresolved: UnresolvedDto[];
}

export interface FeedbackDto {
  report: ReportDto;
  progress: number;
  progress_exact: string;
  score_delta: number;
  sound_cue: SoundCue | null;
  warnings: WarningDto[];
  flow_delta: FlowDeltaDto | null;
  message: string | null;
  assignment?: string[];
  design?: DesignDto; // rides along on move responses
}

export interface TreeRowDto {
  id: string;
  title: string;
  principles: string[];
  prerequisites: string[];
  status: "locked" | "unlocked" | "completed";
  best_score: number | null;
  completed_at: string | null;
}

export interface TreeDto {
  player: string;
  puzzles: TreeRowDto[];
  resume_point: string | null;
  created?: boolean;
}

export interface StartDto {
  token: string;
  puzzle_id: string;
  assignment: string[];
  resumed: boolean;
  design: DesignDto;
  feedback: FeedbackDto;
}

export interface SessionDto {
  token: string;
  puzzle_id: string;
  assignment: string[];
  finished: boolean;
  design: DesignDto;
  feedback: FeedbackDto;
}

export interface FlowsDto {
  nodes: FlowNodeDto[];
  control_edges: FlowEdgeDto[];
  data_edges: FlowEdgeDto[];
  unresolved: UnresolvedDto[];
  notes: { src: string; dst: string; note: string }[];
}

export interface FinishDto {
  report: ReportDto;
  feedback: FeedbackDto;
  best_score: number;
  newly_unlocked: string[];
  resume_point: string | null;
}

export interface PackMetaDto {
  id: string;
  title: string;
  version: string;
  metadata: Record<string, unknown>;
  puzzle_count: number;
  roots: string[];
}

export interface ErrorBody {
  code: string;
  message: string;
  detail: unknown;
}
