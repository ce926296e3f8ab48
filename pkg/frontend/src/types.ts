// Wire types, mirroring the service contract exactly.

export type RouteName = 'education' | 'psychology' | 'refused';

export interface ContextRef {
  id: string;
  title: string;
}

export interface ChatResponse {
  session_id: string;
  reply: string;
  route: RouteName;
  contexts: ContextRef[];
  safety: { safe: boolean };
  error?: string;
}

export interface HealthResponse {
  status: 'ready' | 'degraded';
  components: Record<string, boolean>;
}

export interface SessionTurn {
  role: 'user' | 'assistant' | 'system';
  text: string;
  ts: number;
  route?: RouteName;
}

export interface SessionResponse {
  session_id: string;
  created_at: number;
  turns: SessionTurn[];
}

// View-side message model. Assistant messages carry the route and the
// contexts array verbatim from the API; the UI never invents either.
export interface ChatMessage {
  sender: 'user' | 'assistant';
  text: string;
  route?: RouteName;
  contexts: ContextRef[];
  failed?: boolean;
}

export interface ChatViewState {
  sessionId: string | null;
  messages: ChatMessage[];
  pending: boolean;
  errorBanner: string | null;
  // set on network failure so the composer can restore the unsent text
  retryText: string | null;
}

export function initialState(sessionId: string | null = null): ChatViewState {
  return { sessionId, messages: [], pending: false, errorBanner: null, retryText: null };
}
